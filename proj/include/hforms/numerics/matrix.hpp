#pragma once

#include <string>

#include "hforms/numerics/integer.hpp"
#include "hforms/numerics/surd.hpp"

namespace hforms {

/// 2x2 matrix [[a, b], [c, d]].
template <class T>
struct Matrix2 {
  T a, b, c, d;

  T det() const { return a * d - b * c; }
  Matrix2 operator*(const Matrix2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

using IntMatrix2 = Matrix2<Integer>;
using SurdMatrix2 = Matrix2<QuadraticSurd>;

/// Element of SL(2, Z).
class UnimodularMatrix {
 public:
  UnimodularMatrix() : m_{1, 0, 0, 1} {}
  UnimodularMatrix(Integer a, Integer b, Integer c, Integer d);

  static UnimodularMatrix identity() { return {}; }
  /// z -> -1/(z - k), the single step of the minus continued fraction.
  static UnimodularMatrix digit_step(const Integer& k) { return {0, -1, 1, -k}; }

  const IntMatrix2& entries() const { return m_; }
  UnimodularMatrix inverse() const { return {m_.d, -m_.b, -m_.c, m_.a}; }
  UnimodularMatrix operator*(const UnimodularMatrix& o) const;
  SurdMatrix2 to_surd() const;
  std::string to_string() const;

  friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;

 private:
  IntMatrix2 m_;
};

/// Fractional linear action x -> (a x + b) / (c x + d). A vanishing denominator
/// gives infinity; infinity maps to a / c. Integer matrices must have det = +-1.
BoundaryPoint surd_mobius(const BoundaryPoint& x, const IntMatrix2& m);
BoundaryPoint surd_mobius(const BoundaryPoint& x, const UnimodularMatrix& m);
BoundaryPoint surd_mobius(const BoundaryPoint& x, const SurdMatrix2& m);

}  // namespace hforms
