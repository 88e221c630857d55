#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>

#include "hforms/numerics/integer.hpp"

namespace hforms {

/// Exact real number (p + q*sqrt(d)) / r.
///
/// Canonical form: r > 0, d squarefree and not 1, gcd(p, q, r) = 1. Rationals
/// are stored with q = 0 and d = 0, so a rational is compatible with every
/// radicand. Arithmetic between two irrational surds requires a shared
/// radicand; comparisons work across radicands.
class QuadraticSurd {
 public:
  QuadraticSurd() : p_(0), q_(0), d_(0), r_(1) {}
  QuadraticSurd(Integer p, Integer q, Integer d, Integer r);
  QuadraticSurd(long n) : QuadraticSurd(Integer(n), 0, 0, 1) {}  // NOLINT(google-explicit-constructor)
  explicit QuadraticSurd(const Integer& n) : QuadraticSurd(n, 0, 0, 1) {}
  explicit QuadraticSurd(const BigRational& x) : QuadraticSurd(x.get_num(), 0, 0, x.get_den()) {}

  static QuadraticSurd sqrt(const Integer& n);

  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }
  const Integer& d() const { return d_; }
  const Integer& r() const { return r_; }

  bool is_rational() const { return q_ == 0; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }
  /// Only valid when is_rational().
  BigRational rational_value() const;

  int sign() const;
  QuadraticSurd conjugate() const;
  QuadraticSurd reciprocal() const;
  QuadraticSurd abs() const { return sign() < 0 ? -*this : *this; }

  Integer floor() const;
  Integer ceil() const;

  double to_double() const;
  /// Literal form accepted by parse_surd: surd(p,q,d,r) or rat(p,r).
  std::string to_literal() const;

  QuadraticSurd operator-() const;
  QuadraticSurd& operator+=(const QuadraticSurd& o);
  QuadraticSurd& operator-=(const QuadraticSurd& o);
  QuadraticSurd& operator*=(const QuadraticSurd& o);
  QuadraticSurd& operator/=(const QuadraticSurd& o);

  friend QuadraticSurd operator+(QuadraticSurd a, const QuadraticSurd& b) { return a += b; }
  friend QuadraticSurd operator-(QuadraticSurd a, const QuadraticSurd& b) { return a -= b; }
  friend QuadraticSurd operator*(QuadraticSurd a, const QuadraticSurd& b) { return a *= b; }
  friend QuadraticSurd operator/(QuadraticSurd a, const QuadraticSurd& b) { return a /= b; }

  /// Structural equality of canonical forms, which is value equality.
  friend bool operator==(const QuadraticSurd& a, const QuadraticSurd& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.d_ == b.d_ && a.r_ == b.r_;
  }
  friend std::strong_ordering operator<=>(const QuadraticSurd& a, const QuadraticSurd& b);

  std::size_t hash() const;

 private:
  struct SquarefreeRadicand {};
  // d is already squarefree (or 0); skips the square-factor split.
  QuadraticSurd(SquarefreeRadicand, Integer p, Integer q, Integer d, Integer r);

  void canonicalize(bool split_radicand = true);
  const Integer& shared_radicand(const QuadraticSurd& o) const;

  Integer p_, q_, d_, r_;
};

/// Exact three-way comparison; works for surds over different radicands.
int compare(const QuadraticSurd& a, const QuadraticSurd& b);

int surd_sign(const QuadraticSurd& x);

/// Integer nearest to x. Exact ties (only possible for rationals) go away from zero.
Integer surd_nearest_integer(const QuadraticSurd& x);

/// A point of R u {infinity}.
class BoundaryPoint {
 public:
  BoundaryPoint() = default;  // infinity
  BoundaryPoint(QuadraticSurd x) : value_(std::move(x)) {}  // NOLINT(google-explicit-constructor)
  static BoundaryPoint infinity() { return {}; }

  bool is_infinite() const { return !value_.has_value(); }
  const QuadraticSurd& value() const;
  std::string to_literal() const { return is_infinite() ? "inf" : value_->to_literal(); }

  friend bool operator==(const BoundaryPoint& a, const BoundaryPoint& b) = default;

 private:
  std::optional<QuadraticSurd> value_;
};

/// Parse `surd(p,q,d,r)`, `rat(p,q)`, `inf`, or a bare integer/decimal/fraction.
BoundaryPoint parse_point(const std::string& text);
/// As parse_point, rejecting `inf`.
QuadraticSurd parse_surd(const std::string& text);

}  // namespace hforms

template <>
struct std::hash<hforms::QuadraticSurd> {
  std::size_t operator()(const hforms::QuadraticSurd& x) const noexcept { return x.hash(); }
};
