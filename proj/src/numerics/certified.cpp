#include "hforms/numerics/certified.hpp"

#include <algorithm>

namespace hforms {

CertifiedReal::CertifiedReal(Evaluator eval) : state_(std::make_shared<State>()) { state_->eval = std::move(eval); }

CertifiedReal::CertifiedReal(long n) : CertifiedReal(exact(BigRational(n))) {}

CertifiedReal CertifiedReal::exact(const BigRational& x) {
  return CertifiedReal([x](Precision prec) { return Interval::from_rational(x, prec); });
}

CertifiedReal CertifiedReal::exact(const QuadraticSurd& x) {
  return CertifiedReal([x](Precision prec) { return Interval::from_surd(x, prec); });
}

CertifiedReal CertifiedReal::pi() {
  return CertifiedReal([](Precision prec) { return Interval::pi(prec); });
}

Interval CertifiedReal::bracket(Precision prec) const {
  std::lock_guard<std::mutex> guard(state_->lock);
  if (state_->best && state_->best_prec >= prec) return *state_->best;
  Interval fresh = state_->eval(prec);
  if (state_->best) fresh = fresh.intersect(*state_->best);
  state_->best = fresh;
  state_->best_prec = prec;
  return fresh;
}

Interval CertifiedReal::current() const {
  {
    std::lock_guard<std::mutex> guard(state_->lock);
    if (state_->best) return *state_->best;
  }
  return bracket(kDefaultPrecision);
}

Interval CertifiedReal::refine_to_width(double width, Precision cap) const {
  Precision prec = kDefaultPrecision;
  Interval b = bracket(prec);
  while (b.width() > width) {
    if (prec >= cap) throw PrecisionExhausted("bracket wider than requested at the precision cap");
    prec = std::min<Precision>(prec * 2, cap);
    b = bracket(prec);
  }
  return b;
}

std::optional<int> CertifiedReal::sign(Precision cap) const {
  Precision prec = kDefaultPrecision;
  for (;;) {
    const Interval b = bracket(prec);
    if (const auto s = b.sign(); s.has_value() && *s != 0) return s;
    if (prec >= cap) return b.sign();
    prec = std::min<Precision>(prec * 2, cap);
  }
}

namespace {
// Children are evaluated with a few guard bits so that composite brackets still
// shrink roughly like 2^-prec.
constexpr Precision kGuard = 8;
}  // namespace

CertifiedReal CertifiedReal::operator-() const {
  CertifiedReal self = *this;
  return CertifiedReal([self](Precision prec) { return -self.bracket(prec + kGuard); });
}

CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
  return CertifiedReal([a, b](Precision prec) { return a.bracket(prec + kGuard) + b.bracket(prec + kGuard); });
}

CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b) {
  return CertifiedReal([a, b](Precision prec) { return a.bracket(prec + kGuard) - b.bracket(prec + kGuard); });
}

CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b) {
  return CertifiedReal([a, b](Precision prec) { return a.bracket(prec + kGuard) * b.bracket(prec + kGuard); });
}

CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b) {
  return CertifiedReal([a, b](Precision prec) {
    Interval den = b.bracket(prec + kGuard);
    // A denominator that is nonzero but tiny needs more bits before it separates from 0.
    for (Precision p = prec + kGuard; !den.sign().has_value() || *den.sign() == 0;) {
      if (p > 16384) throw PrecisionExhausted("denominator bracket keeps containing zero");
      p *= 2;
      den = b.bracket(p);
    }
    return a.bracket(prec + kGuard) / den;
  });
}

CertifiedReal sqrt(const CertifiedReal& x) {
  return CertifiedReal([x](Precision prec) { return sqrt(x.bracket(prec + kGuard)); });
}

CertifiedReal log(const CertifiedReal& x) {
  return CertifiedReal([x](Precision prec) { return log(x.bracket(prec + kGuard)); });
}

CertifiedReal exp(const CertifiedReal& x) {
  return CertifiedReal([x](Precision prec) { return exp(x.bracket(prec + kGuard)); });
}

CertifiedReal acosh(const CertifiedReal& x) {
  return CertifiedReal([x](Precision prec) { return acosh(x.bracket(prec + kGuard)); });
}

bool certainly_less(const CertifiedReal& a, const CertifiedReal& b, Precision cap) {
  const auto s = (b - a).sign(cap);
  return s.has_value() && *s > 0;
}

}  // namespace hforms
