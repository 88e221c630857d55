#include "hforms/numerics/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace hforms {

BigFloat::BigFloat(Precision prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigRational BigFloat::to_rational() const {
  if (!mpfr_number_p(value_)) throw std::domain_error("non-finite MPFR value");
  if (mpfr_zero_p(value_)) return BigRational(0);
  Integer mant;
  const mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), value_);
  BigRational q(mant);
  if (e >= 0) {
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return q;
}

Interval::Interval(Precision prec) : lo_(prec), hi_(prec) {}

Interval::Interval(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (mpfr_nan_p(lo_.get()) || mpfr_nan_p(hi_.get())) throw std::domain_error("NaN interval endpoint");
  if (mpfr_greater_p(lo_.get(), hi_.get())) throw std::logic_error("inverted interval");
}

Interval Interval::from_integer(const Integer& n, Precision prec) {
  BigFloat lo(prec), hi(prec);
  mpfr_set_z(lo.get(), n.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.get(), n.get_mpz_t(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::from_rational(const BigRational& x, Precision prec) {
  BigFloat lo(prec), hi(prec);
  mpfr_set_q(lo.get(), x.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), x.get_mpq_t(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::from_surd(const QuadraticSurd& x, Precision prec) {
  if (x.is_rational()) return from_rational(x.rational_value(), prec);
  // Guard bits absorb the few roundings before the final division.
  const Precision work = prec + 16;
  Interval root = sqrt(from_integer(x.d(), work));
  Interval num = from_integer(x.p(), work) + from_integer(x.q(), work) * root;
  Interval out = num / from_integer(x.r(), work);
  BigFloat lo(prec), hi(prec);
  mpfr_set(lo.get(), out.lo_.get(), MPFR_RNDD);
  mpfr_set(hi.get(), out.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::from_double(double x, Precision prec) {
  BigFloat lo(prec), hi(prec);
  mpfr_set_d(lo.get(), x, MPFR_RNDD);
  mpfr_set_d(hi.get(), x, MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval Interval::pi(Precision prec) {
  BigFloat lo(prec), hi(prec);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

double Interval::mid_double() const {
  BigFloat m(precision() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double();
}

double Interval::width() const {
  BigFloat w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w.to_double(MPFR_RNDU);
}

std::optional<int> Interval::sign() const {
  if (mpfr_sgn(lo_.get()) > 0) return 1;
  if (mpfr_sgn(hi_.get()) < 0) return -1;
  if (mpfr_zero_p(lo_.get()) && mpfr_zero_p(hi_.get())) return 0;
  return std::nullopt;
}

bool Interval::contains(const BigRational& x) const {
  return mpfr_cmp_q(lo_.get(), x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), x.get_mpq_t()) >= 0;
}

bool Interval::certainly_less(const Interval& o) const { return mpfr_less_p(hi_.get(), o.lo_.get()) != 0; }
bool Interval::certainly_leq(const Interval& o) const { return mpfr_lessequal_p(hi_.get(), o.lo_.get()) != 0; }

bool Interval::subset_of(const Interval& o) const {
  return mpfr_greaterequal_p(lo_.get(), o.lo_.get()) != 0 && mpfr_lessequal_p(hi_.get(), o.hi_.get()) != 0;
}

Interval Interval::intersect(const Interval& o) const {
  // Ties keep this side, so a fresh high-precision bracket keeps its precision.
  const BigFloat& lo = mpfr_less_p(lo_.get(), o.lo_.get()) ? o.lo_ : lo_;
  const BigFloat& hi = mpfr_greater_p(hi_.get(), o.hi_.get()) ? o.hi_ : hi_;
  if (mpfr_greater_p(lo.get(), hi.get())) throw std::logic_error("disjoint brackets for the same value");
  return {lo, hi};
}

Interval Interval::hull(const Interval& o) const {
  const BigFloat& lo = mpfr_less_p(lo_.get(), o.lo_.get()) ? lo_ : o.lo_;
  const BigFloat& hi = mpfr_greater_p(hi_.get(), o.hi_.get()) ? hi_ : o.hi_;
  return {lo, hi};
}

Interval Interval::operator-() const {
  BigFloat lo(hi_.precision()), hi(lo_.precision());
  mpfr_neg(lo.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), lo_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

namespace {
Precision joint(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
  const Precision prec = joint(a, b);
  BigFloat lo(prec), hi(prec);
  mpfr_add(lo.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval operator-(const Interval& a, const Interval& b) {
  const Precision prec = joint(a, b);
  BigFloat lo(prec), hi(prec);
  mpfr_sub(lo.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval operator*(const Interval& a, const Interval& b) {
  const Precision prec = joint(a, b);
  BigFloat lo(prec), hi(prec), tmp(prec);
  bool first = true;
  for (const BigFloat* x : {&a.lo_, &a.hi_}) {
    for (const BigFloat* y : {&b.lo_, &b.hi_}) {
      mpfr_mul(tmp.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_less_p(tmp.get(), lo.get())) mpfr_set(lo.get(), tmp.get(), MPFR_RNDN);
      mpfr_mul(tmp.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(tmp.get(), hi.get())) mpfr_set(hi.get(), tmp.get(), MPFR_RNDN);
      first = false;
    }
  }
  return {std::move(lo), std::move(hi)};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (!b.sign().has_value() || *b.sign() == 0) throw std::domain_error("interval division by a bracket containing zero");
  const Precision prec = joint(a, b);
  BigFloat lo(prec), hi(prec), tmp(prec);
  bool first = true;
  for (const BigFloat* x : {&a.lo_, &a.hi_}) {
    for (const BigFloat* y : {&b.lo_, &b.hi_}) {
      mpfr_div(tmp.get(), x->get(), y->get(), MPFR_RNDD);
      if (first || mpfr_less_p(tmp.get(), lo.get())) mpfr_set(lo.get(), tmp.get(), MPFR_RNDN);
      mpfr_div(tmp.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_greater_p(tmp.get(), hi.get())) mpfr_set(hi.get(), tmp.get(), MPFR_RNDN);
      first = false;
    }
  }
  return {std::move(lo), std::move(hi)};
}

Interval sqrt(const Interval& x) {
  if (mpfr_sgn(x.hi_.get()) < 0) throw std::domain_error("sqrt of a negative bracket");
  const Precision prec = x.precision();
  BigFloat lo(prec), hi(prec);
  if (mpfr_sgn(x.lo_.get()) <= 0) {
    mpfr_set_zero(lo.get(), 1);
  } else {
    mpfr_sqrt(lo.get(), x.lo_.get(), MPFR_RNDD);
  }
  mpfr_sqrt(hi.get(), x.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval log(const Interval& x) {
  if (mpfr_sgn(x.lo_.get()) <= 0) throw std::domain_error("log of a bracket reaching zero");
  const Precision prec = x.precision();
  BigFloat lo(prec), hi(prec);
  mpfr_log(lo.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_log(hi.get(), x.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval exp(const Interval& x) {
  const Precision prec = x.precision();
  BigFloat lo(prec), hi(prec);
  mpfr_exp(lo.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_exp(hi.get(), x.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval acosh(const Interval& x) {
  if (mpfr_cmp_ui(x.hi_.get(), 1) < 0) throw std::domain_error("acosh of a bracket below 1");
  const Precision prec = x.precision();
  BigFloat lo(prec), hi(prec);
  if (mpfr_cmp_ui(x.lo_.get(), 1) <= 0) {
    mpfr_set_zero(lo.get(), 1);
  } else {
    mpfr_acosh(lo.get(), x.lo_.get(), MPFR_RNDD);
  }
  mpfr_acosh(hi.get(), x.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval abs(const Interval& x) {
  if (mpfr_sgn(x.lo_.get()) >= 0) return x;
  if (mpfr_sgn(x.hi_.get()) <= 0) return -x;
  const Precision prec = x.precision();
  BigFloat lo(prec), hi(prec);
  mpfr_set_zero(lo.get(), 1);
  mpfr_neg(hi.get(), x.lo_.get(), MPFR_RNDU);
  if (mpfr_greater_p(x.hi_.get(), hi.get())) mpfr_set(hi.get(), x.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval cosh(const Interval& x) {
  const Interval m = abs(x);
  const Precision prec = x.precision();
  BigFloat lo(prec), hi(prec);
  mpfr_cosh(lo.get(), m.lo_.get(), MPFR_RNDD);
  mpfr_cosh(hi.get(), m.hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

std::string Interval::to_string(int digits) const {
  char buf[256];
  mpfr_snprintf(buf, sizeof buf, "[%.*RDe, %.*RUe]", digits, lo_.get(), digits, hi_.get());
  return buf;
}

std::string format_lower(const Interval& x, int digits) {
  char buf[128];
  mpfr_snprintf(buf, sizeof buf, "%.*RDe", digits, x.lower().get());
  return buf;
}

std::string format_upper(const Interval& x, int digits) {
  char buf[128];
  mpfr_snprintf(buf, sizeof buf, "%.*RUe", digits, x.upper().get());
  return buf;
}

}  // namespace hforms
