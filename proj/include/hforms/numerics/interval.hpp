#pragma once

#include <mpfr.h>

#include <algorithm>
#include <optional>
#include <string>

#include "hforms/numerics/integer.hpp"
#include "hforms/numerics/surd.hpp"

namespace hforms {

using Precision = mpfr_prec_t;
inline constexpr Precision kDefaultPrecision = 128;

/// Owning wrapper for an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(Precision prec = kDefaultPrecision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  Precision precision() const { return mpfr_get_prec(value_); }
  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
  /// Exact value (MPFR numbers are dyadic rationals).
  BigRational to_rational() const;

 private:
  mpfr_t value_;
};

/// Closed interval [lo, hi] with outward-rounded MPFR endpoints.
class Interval {
 public:
  explicit Interval(Precision prec = kDefaultPrecision);
  Interval(BigFloat lo, BigFloat hi);

  static Interval from_integer(const Integer& n, Precision prec);
  static Interval from_rational(const BigRational& x, Precision prec);
  static Interval from_surd(const QuadraticSurd& x, Precision prec);
  static Interval from_double(double x, Precision prec);
  static Interval pi(Precision prec);

  const BigFloat& lower() const { return lo_; }
  const BigFloat& upper() const { return hi_; }
  Precision precision() const { return std::max(lo_.precision(), hi_.precision()); }

  double lower_double() const { return lo_.to_double(MPFR_RNDD); }
  double upper_double() const { return hi_.to_double(MPFR_RNDU); }
  double mid_double() const;
  /// Upper bound on hi - lo.
  double width() const;

  /// +1 / -1 when the interval excludes zero, 0 for the point interval {0}, nullopt otherwise.
  std::optional<int> sign() const;
  bool contains(const BigRational& x) const;
  bool certainly_less(const Interval& o) const;  // hi < o.lo
  bool certainly_leq(const Interval& o) const;   // hi <= o.lo
  bool subset_of(const Interval& o) const;
  Interval intersect(const Interval& o) const;
  Interval hull(const Interval& o) const;

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);

  friend Interval sqrt(const Interval& x);
  friend Interval log(const Interval& x);
  friend Interval exp(const Interval& x);
  friend Interval acosh(const Interval& x);
  friend Interval cosh(const Interval& x);
  friend Interval abs(const Interval& x);

  std::string to_string(int digits = 17) const;

 private:
  BigFloat lo_, hi_;
};

/// Decimal renderings rounded outward, for emitting certified brackets as text.
std::string format_lower(const Interval& x, int digits = 17);
std::string format_upper(const Interval& x, int digits = 17);

}  // namespace hforms
