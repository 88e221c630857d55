#include "hforms/numerics/surd.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

#include <mpfr.h>

namespace hforms {

QuadraticSurd::QuadraticSurd(Integer p, Integer q, Integer d, Integer r)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)), r_(std::move(r)) {
  if (r_ == 0) throw std::domain_error("surd with zero denominator");
  if (d_ < 0) throw std::domain_error("surd with negative radicand");
  canonicalize();
}

QuadraticSurd QuadraticSurd::sqrt(const Integer& n) { return {0, 1, n, 1}; }

QuadraticSurd::QuadraticSurd(SquarefreeRadicand, Integer p, Integer q, Integer d, Integer r)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)), r_(std::move(r)) {
  if (r_ == 0) throw std::domain_error("surd with zero denominator");
  canonicalize(false);
}

void QuadraticSurd::canonicalize(bool split_radicand) {
  if (q_ == 0 || d_ == 0) {
    q_ = 0;
    d_ = 0;
  } else if (split_radicand) {
    const SquareSplit split = split_square_factor(d_);
    q_ *= split.root;
    d_ = split.squarefree;
    if (d_ == 1) {
      p_ += q_;
      q_ = 0;
      d_ = 0;
    }
  }
  if (r_ < 0) {
    p_ = -p_;
    q_ = -q_;
    r_ = -r_;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), p_.get_mpz_t(), q_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r_.get_mpz_t());
  if (g > 1) {
    mpz_divexact(p_.get_mpz_t(), p_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(q_.get_mpz_t(), q_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(r_.get_mpz_t(), r_.get_mpz_t(), g.get_mpz_t());
  }
}

BigRational QuadraticSurd::rational_value() const {
  if (!is_rational()) throw std::domain_error("irrational surd has no rational value");
  BigRational x(p_, r_);
  x.canonicalize();
  return x;
}

const Integer& QuadraticSurd::shared_radicand(const QuadraticSurd& o) const {
  if (is_rational()) return o.d_;
  if (o.is_rational() || o.d_ == d_) return d_;
  throw std::domain_error("arithmetic between surds over different radicands (" + d_.get_str() + " vs " +
                          o.d_.get_str() + ")");
}

int QuadraticSurd::sign() const {
  const int sp = sgn(p_);
  const int sq = sgn(q_);
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // Opposite signs: the larger of p^2 and q^2 d wins. Equality is impossible for squarefree d > 1.
  const Integer pp = p_ * p_;
  const Integer qqd = q_ * q_ * d_;
  return pp > qqd ? sp : sq;
}

QuadraticSurd QuadraticSurd::conjugate() const { return {SquarefreeRadicand{}, p_, -q_, d_, r_}; }

QuadraticSurd QuadraticSurd::reciprocal() const {
  if (is_zero()) throw std::domain_error("reciprocal of zero");
  // r / (p + q sqrt d) = r (p - q sqrt d) / (p^2 - q^2 d)
  const Integer norm = p_ * p_ - q_ * q_ * d_;
  return {SquarefreeRadicand{}, r_ * p_, -r_ * q_, d_, norm};
}

Integer QuadraticSurd::floor() const {
  if (is_rational()) return floor_div(p_, r_);
  const Integer n = q_ * q_ * d_;
  const Integer root = isqrt(n);
  // q sqrt d is irrational, so its floor is root or -(root + 1).
  const Integer floor_qsd = q_ > 0 ? root : Integer(-root - 1);
  return floor_div(p_ + floor_qsd, r_);
}

Integer QuadraticSurd::ceil() const { return -(-*this).floor(); }

double QuadraticSurd::to_double() const {
  mpfr_t acc, tmp;
  mpfr_init2(acc, 128);
  mpfr_init2(tmp, 128);
  mpfr_set_z(acc, d_.get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(acc, acc, MPFR_RNDN);
  mpfr_mul_z(acc, acc, q_.get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(tmp, p_.get_mpz_t(), MPFR_RNDN);
  mpfr_add(acc, acc, tmp, MPFR_RNDN);
  mpfr_div_z(acc, acc, r_.get_mpz_t(), MPFR_RNDN);
  const double out = mpfr_get_d(acc, MPFR_RNDN);
  mpfr_clear(acc);
  mpfr_clear(tmp);
  return out;
}

std::string QuadraticSurd::to_literal() const {
  if (is_rational()) return "rat(" + p_.get_str() + "," + r_.get_str() + ")";
  return "surd(" + p_.get_str() + "," + q_.get_str() + "," + d_.get_str() + "," + r_.get_str() + ")";
}

QuadraticSurd QuadraticSurd::operator-() const { return {SquarefreeRadicand{}, -p_, -q_, d_, r_}; }

QuadraticSurd& QuadraticSurd::operator+=(const QuadraticSurd& o) {
  const Integer d = shared_radicand(o);
  *this = QuadraticSurd(SquarefreeRadicand{}, p_ * o.r_ + o.p_ * r_, q_ * o.r_ + o.q_ * r_, d, r_ * o.r_);
  return *this;
}

QuadraticSurd& QuadraticSurd::operator-=(const QuadraticSurd& o) { return *this += -o; }

QuadraticSurd& QuadraticSurd::operator*=(const QuadraticSurd& o) {
  const Integer d = shared_radicand(o);
  *this = QuadraticSurd(SquarefreeRadicand{}, p_ * o.p_ + q_ * o.q_ * d, p_ * o.q_ + q_ * o.p_, d, r_ * o.r_);
  return *this;
}

QuadraticSurd& QuadraticSurd::operator/=(const QuadraticSurd& o) { return *this *= o.reciprocal(); }

std::size_t QuadraticSurd::hash() const {
  std::size_t h = hash_value(p_);
  for (const Integer* part : {&q_, &d_, &r_}) {
    h ^= hash_value(*part) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::strong_ordering operator<=>(const QuadraticSurd& a, const QuadraticSurd& b) {
  const int c = compare(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

int compare(const QuadraticSurd& a, const QuadraticSurd& b) {
  if (a.is_rational() || b.is_rational() || a.d() == b.d()) return (a - b).sign();
  // Different radicands, both irrational: compare signs, then squares.
  const int sa = a.sign();
  const int sb = b.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  // a^2 in Q(sqrt da), b^2 in Q(sqrt db). Split b^2 = rational + pure part.
  const QuadraticSurd a2 = a * a;
  const QuadraticSurd b2 = b * b;
  const QuadraticSurd b2_rational(BigRational(b2.p(), b2.r()));
  const QuadraticSurd u = a2 - b2_rational;       // in Q(sqrt da)
  const QuadraticSurd v = b2 - b2_rational;  // pure multiple of sqrt db
  // sign(a^2 - b^2) = sign(u - v)
  int diff_sign;
  const int su = u.sign();
  const int sv = v.sign();
  if (su != sv || su == 0) {
    diff_sign = su > sv ? 1 : (su < sv ? -1 : 0);
  } else {
    const QuadraticSurd v2 = v * v;  // rational
    const int mag = compare(u * u, v2);
    diff_sign = su * mag;
  }
  return sa * diff_sign;
}

int surd_sign(const QuadraticSurd& x) { return x.sign(); }

Integer surd_nearest_integer(const QuadraticSurd& x) {
  if (x.is_rational()) {
    const BigRational v = x.rational_value();
    const BigRational twice = v * 2;
    if (twice.get_den() == 1 && twice.get_num() % 2 != 0) {
      // x = n + 1/2 exactly.
      const Integer fl = hforms::floor(v);
      return sgn(v.get_num()) > 0 ? Integer(fl + 1) : fl;
    }
    return hforms::floor(v + BigRational(1, 2));
  }
  return (x + QuadraticSurd(BigRational(1, 2))).floor();
}

const QuadraticSurd& BoundaryPoint::value() const {
  if (!value_) throw std::domain_error("boundary point is infinite");
  return *value_;
}

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

std::vector<std::string> call_args(const std::string& text, const std::string& head) {
  if (text.size() < head.size() + 2 || text.compare(0, head.size() + 1, head + "(") != 0 || text.back() != ')') {
    throw std::invalid_argument("malformed literal '" + text + "'");
  }
  std::vector<std::string> args;
  std::string cur;
  for (std::size_t i = head.size() + 1; i + 1 < text.size(); ++i) {
    if (text[i] == ',') {
      args.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(text[i]);
    }
  }
  args.push_back(cur);
  return args;
}

Integer literal_integer(const std::string& s, const std::string& whole) {
  const BigRational q = parse_rational(s);
  if (q.get_den() != 1) throw std::invalid_argument("non-integer component in '" + whole + "'");
  return q.get_num();
}

}  // namespace

BoundaryPoint parse_point(const std::string& raw) {
  const std::string text = strip(raw);
  if (text == "inf" || text == "infinity" || text == "oo") return BoundaryPoint::infinity();
  if (text.rfind("surd(", 0) == 0) {
    const auto args = call_args(text, "surd");
    if (args.size() != 4) throw std::invalid_argument("surd literal needs 4 arguments: '" + text + "'");
    return QuadraticSurd(literal_integer(args[0], text), literal_integer(args[1], text),
                         literal_integer(args[2], text), literal_integer(args[3], text));
  }
  if (text.rfind("rat(", 0) == 0) {
    const auto args = call_args(text, "rat");
    if (args.size() != 2) throw std::invalid_argument("rat literal needs 2 arguments: '" + text + "'");
    return QuadraticSurd(literal_integer(args[0], text), 0, 0, literal_integer(args[1], text));
  }
  return QuadraticSurd(parse_rational(text));
}

QuadraticSurd parse_surd(const std::string& text) {
  const BoundaryPoint pt = parse_point(text);
  if (pt.is_infinite()) throw std::invalid_argument("expected a finite value, got '" + text + "'");
  return pt.value();
}

}  // namespace hforms
