#include "hforms/numerics/matrix.hpp"

#include <stdexcept>

namespace hforms {

UnimodularMatrix::UnimodularMatrix(Integer a, Integer b, Integer c, Integer d)
    : m_{std::move(a), std::move(b), std::move(c), std::move(d)} {
  if (m_.det() != 1) throw std::domain_error("unimodular matrix must have determinant 1");
}

UnimodularMatrix UnimodularMatrix::operator*(const UnimodularMatrix& o) const {
  const IntMatrix2 p = m_ * o.m_;
  return {p.a, p.b, p.c, p.d};
}

SurdMatrix2 UnimodularMatrix::to_surd() const {
  return {QuadraticSurd(m_.a), QuadraticSurd(m_.b), QuadraticSurd(m_.c), QuadraticSurd(m_.d)};
}

std::string UnimodularMatrix::to_string() const {
  return "[[" + m_.a.get_str() + "," + m_.b.get_str() + "],[" + m_.c.get_str() + "," + m_.d.get_str() + "]]";
}

BoundaryPoint surd_mobius(const BoundaryPoint& x, const SurdMatrix2& m) {
  if (x.is_infinite()) {
    if (m.c.is_zero()) return BoundaryPoint::infinity();
    return m.a / m.c;
  }
  const QuadraticSurd& v = x.value();
  const QuadraticSurd den = m.c * v + m.d;
  if (den.is_zero()) return BoundaryPoint::infinity();
  return (m.a * v + m.b) / den;
}

BoundaryPoint surd_mobius(const BoundaryPoint& x, const IntMatrix2& m) {
  const Integer det = m.det();
  if (det != 1 && det != -1) throw std::domain_error("integer Mobius matrix must have determinant +-1");
  return surd_mobius(x, SurdMatrix2{QuadraticSurd(m.a), QuadraticSurd(m.b), QuadraticSurd(m.c), QuadraticSurd(m.d)});
}

BoundaryPoint surd_mobius(const BoundaryPoint& x, const UnimodularMatrix& m) {
  return surd_mobius(x, m.entries());
}

}  // namespace hforms
