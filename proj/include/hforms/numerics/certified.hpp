#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "hforms/numerics/interval.hpp"

namespace hforms {

/// Thrown when a bracket cannot be tightened enough within the precision cap.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A real number known through brackets that can be tightened on demand.
///
/// The value is a lazy expression: each node knows how to produce an enclosing
/// interval at a requested working precision. The tightest bracket seen so far
/// is cached and every new bracket is intersected with it, so refinement never
/// widens. Copies share the cache; the cache is mutex-guarded, so one value may
/// be refined from several threads.
class CertifiedReal {
 public:
  using Evaluator = std::function<Interval(Precision)>;

  explicit CertifiedReal(Evaluator eval);
  CertifiedReal() : CertifiedReal(0L) {}
  CertifiedReal(long n);  // NOLINT(google-explicit-constructor)

  static CertifiedReal exact(const BigRational& x);
  static CertifiedReal exact(const QuadraticSurd& x);
  static CertifiedReal pi();

  /// Bracket computed at (at least) the given working precision.
  Interval bracket(Precision prec = kDefaultPrecision) const;
  /// Doubles the precision until the width is at most `width`.
  Interval refine_to_width(double width, Precision cap = 4096) const;
  /// Sign, refining up to `cap`; nullopt when 0 cannot be excluded.
  std::optional<int> sign(Precision cap = 4096) const;

  BigRational lower() const { return current().lower().to_rational(); }
  BigRational upper() const { return current().upper().to_rational(); }
  double approx() const { return current().mid_double(); }

  CertifiedReal operator-() const;
  friend CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b);
  friend CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b);

  friend CertifiedReal sqrt(const CertifiedReal& x);
  friend CertifiedReal log(const CertifiedReal& x);
  friend CertifiedReal exp(const CertifiedReal& x);
  friend CertifiedReal acosh(const CertifiedReal& x);

 private:
  struct State {
    Evaluator eval;
    std::mutex lock;
    std::optional<Interval> best;
    Precision best_prec = 0;
  };

  Interval current() const;

  std::shared_ptr<State> state_;
};

/// True when a < b can be certified by refinement up to `cap`.
bool certainly_less(const CertifiedReal& a, const CertifiedReal& b, Precision cap = 4096);

}  // namespace hforms
