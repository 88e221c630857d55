#include "hforms/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hforms/hurwitz.hpp"

namespace hforms {

namespace {

CertifiedReal cr(const QuadraticSurd& x) { return CertifiedReal::exact(x); }
CertifiedReal cr(const BigRational& x) { return CertifiedReal::exact(x); }
CertifiedReal half() { return cr(BigRational(1, 2)); }

// 1/2 log(3 sqrt 5) = 1/4 log 45
CertifiedReal chi_big() { return log(CertifiedReal(45)) / CertifiedReal(4); }
CertifiedReal quarter_log_9_5() { return log(cr(BigRational(9, 5))) / CertifiedReal(4); }

WindowEstimate window_of(const std::vector<double>& avg, std::size_t n, std::size_t window) {
  WindowEstimate w;
  if (n == 0) return w;
  if (window == 0) window = std::max<std::size_t>(1, n / 2);
  w.first = n >= window ? n - window + 1 : 1;
  w.last = n;
  w.lower = INFINITY;
  w.upper = -INFINITY;
  for (std::size_t k = w.first; k <= w.last; ++k) {
    w.lower = std::min(w.lower, avg[k]);
    w.upper = std::max(w.upper, avg[k]);
  }
  return w;
}

}  // namespace

QuadraticSurd e_threshold(const BigRational& delta) {
  return QuadraticSurd(BigRational(2 / (delta * delta) + BigRational(1, 2))) + golden_lambda();
}

QuadraticSurd f_threshold(const BigRational& delta) {
  return QuadraticSurd(BigRational(2 / (delta * delta) - BigRational(3, 2))) + golden_lambda();
}

StatsSeries digit_statistics(const std::vector<Integer>& digits, const BigRational& delta, std::size_t n,
                             std::size_t window) {
  if (digits.size() < n) throw std::invalid_argument("fewer digits than requested");
  if (delta <= 0) throw std::domain_error("delta must be positive");
  StatsSeries s;
  s.digits.assign(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(n));
  s.delta = delta;
  s.n = n;
  const QuadraticSurd te = e_threshold(delta), tf = f_threshold(delta);
  const CertifiedReal big = chi_big(), two = chi_constant(Integer(2));

  Integer product = 1;
  long k2 = 0, k3 = 0;
  std::size_t e = 0, f = 0;
  std::vector<double> a_avg(n + 1), w_avg(n + 1), e_avg(n + 1), f_avg(n + 1);
  auto push = [&] {
    const CertifiedReal alpha = log(cr(QuadraticSurd(product)));
    s.alpha.push_back(alpha);
    s.omega.push_back(alpha - CertifiedReal(k3) * big - CertifiedReal(k2) * two);
    s.e.push_back(e);
    s.f.push_back(f);
  };
  push();
  for (std::size_t j = 0; j < n; ++j) {
    const Integer a = abs(digits[j]);
    if (a < 2) throw std::domain_error("digit with |a| < 2 has no chi; statistics need |a_j| >= 2");
    product *= a;
    (a == 2 ? k2 : k3) += 1;
    const QuadraticSurd as(a);
    if (compare(as, te) > 0) ++e;
    if (compare(as, tf) > 0) ++f;
    push();
    const double k = static_cast<double>(j + 1);
    a_avg[j + 1] = s.alpha.back().approx() / k;
    w_avg[j + 1] = s.omega.back().approx() / k;
    e_avg[j + 1] = static_cast<double>(e) / k;
    f_avg[j + 1] = static_cast<double>(f) / k;
  }
  s.alpha_avg = window_of(a_avg, n, window);
  s.omega_avg = window_of(w_avg, n, window);
  s.e_avg = window_of(e_avg, n, window);
  s.f_avg = window_of(f_avg, n, window);
  return s;
}

CertifiedReal c0_constant() {
  const CertifiedReal inner = cr(BigRational(3, 4)) + sqrt(half());
  return (log(CertifiedReal(45)) / CertifiedReal(2) + log(inner)) / CertifiedReal(2);
}

CertifiedReal eta_constant() { return log(cr(BigRational(9, 5))) / (CertifiedReal(4) * log(CertifiedReal(3))); }

namespace {

CertifiedReal mu_quarter() {
  const QuadraticSurd mu = cross_section_mu();
  return sqrt(sqrt(cr(QuadraticSurd(1) - mu * mu)));
}

CertifiedReal sqrt_2_over_pi() { return sqrt(CertifiedReal(2) / CertifiedReal::pi()); }

}  // namespace

std::vector<NamedConstant> constants() {
  return {
      {"lambda", cr(golden_lambda())},
      {"mu", cr(cross_section_mu())},
      {"c0", c0_constant()},
      {"eta", eta_constant()},
      {"quarter_log_9_5", quarter_log_9_5()},
      {"half_log_3sqrt5", chi_big()},
      {"chi_2", chi_constant(Integer(2))},
      {"chi_2_lower", log(cr(BigRational(16, 11))) / CertifiedReal(2)},
      {"chi_2_upper", log(cr(BigRational(3, 2))) / CertifiedReal(2)},
      {"one_minus_mu2_quarter", mu_quarter()},
      {"sqrt_2_over_pi", sqrt_2_over_pi()},
  };
}

namespace {

Check less_check(const CertifiedReal& a, const CertifiedReal& b) {
  const auto s = (b - a).sign(1024);
  if (!s) return Check::Undecided;
  return *s > 0 ? Check::Holds : Check::Violated;
}

}  // namespace

std::vector<ConstantCheck> check_constants() {
  const CertifiedReal chi = chi_constant(Integer(2));
  return {
      {"eta > 1/8", less_check(cr(BigRational(1, 8)), eta_constant())},
      {"sqrt(2/pi) < (1-mu^2)^(1/4)", less_check(sqrt_2_over_pi(), mu_quarter())},
      {"chi_2 > 1/2 log(16/11)", less_check(log(cr(BigRational(16, 11))) / CertifiedReal(2), chi)},
      {"chi_2 < 1/2 log(3/2)", less_check(chi, log(cr(BigRational(3, 2))) / CertifiedReal(2))},
  };
}

PerTermReport per_term_bounds(long max_a) {
  PerTermReport rep;
  rep.max_a = max_a;
  constexpr Precision prec = 128;
  const Interval big = chi_big().bracket(prec);
  const Interval quarter = quarter_log_9_5().bracket(prec);
  const Interval eta = eta_constant().bracket(prec);
  const Interval chi2 = chi_constant(Integer(2)).bracket(prec);
  auto tally = [&](std::optional<int> s) {
    if (!s) ++rep.undecided;
    else if (*s < 0) ++rep.violations;
  };
  for (long a = 2; a <= max_a; ++a) {
    rep.checked += 2;
    if (a == 3) {
      // Equality in both bounds: 4 (log 3 - 1/2 log 3 sqrt 5) = log(81 / 45) = log(9/5).
      if (make_rational(81, 45) != make_rational(9, 5)) rep.violations += 2;
      continue;
    }
    const Interval la = log(Interval::from_integer(a, prec));
    const Interval chi = a == 2 ? chi2 : big;
    tally((la - chi - quarter).sign());
    tally((la - chi - eta * la).sign());
  }
  return rep;
}

SlopeBracket slope_bracket(const StatsSeries& s, double epsilon, double M) {
  if (!(epsilon > 0)) throw std::domain_error("epsilon must be positive");
  const double eta = eta_constant().approx();
  const double cap = std::max(s.omega_avg.lower, eta * s.alpha_avg.lower);
  if (!(M > 0) || M > cap) throw std::domain_error("M must lie in (0, max(omega, eta alpha^-)]");
  SlopeBracket b;
  const double alpha_plus = s.alpha_avg.upper;
  if (!std::isfinite(alpha_plus)) {
    b.lower_infinite_alpha = true;
    b.lower = 0;
  } else {
    b.lower = (1 - epsilon) * s.e_avg.lower / (alpha_plus + c0_constant().approx());
  }
  b.upper = (1 + epsilon) * (s.f_avg.upper + epsilon) / M;
  return b;
}

bool VerificationReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const VerificationRow& r) { return r.pass_lower && r.pass_upper; });
}

VerificationReport verify_reduced_bounds(const BinaryForm& form, const BigRational& delta, const BigRational& kappa,
                                         const std::vector<BigRational>& rhos, unsigned workers) {
  if (!is_h_reduced(form)) throw std::domain_error("form is not H-reduced; reduce it with h_reduce first");
  if (delta <= 0 || !certainly_less(cr(BigRational(delta * delta)), CertifiedReal(2) / CertifiedReal::pi())) {
    throw std::domain_error("verify requires 0 < delta < sqrt(2/pi)");
  }
  if (kappa <= 0) throw std::domain_error("kappa must be positive");
  if (rhos.empty()) throw std::invalid_argument("empty rho grid");
  const QuadraticSurd u = form.u().value(), w = form.w().value();

  VerificationReport rep;
  rep.form = form.to_literal();
  rep.delta = delta;
  rep.kappa = kappa;

  const ExactPoint gi = image_of_i(form.g());
  const QuadraticSurd entry0 = circle_crossing_x(u, w, 0);
  rep.t_prime = log(cr(arc_ratio(u, w, gi.x) / arc_ratio(u, w, entry0))) / CertifiedReal(2);
  const auto tsign = rep.t_prime.sign();
  rep.theta = tsign && *tsign < 0 ? -rep.t_prime : rep.t_prime;

  double log_max = 0;
  for (const auto& r : rhos) log_max = std::max(log_max, std::log(mpq_get_d(r.get_mpq_t())));
  // omega_n grows by at least 1/4 log(9/5) per digit.
  const double per = 0.25 * std::log(1.8);
  const auto n = static_cast<std::size_t>(std::ceil((log_max + rep.theta.approx() + 1) / per)) + 2;
  rep.segments = n;
  const auto segs = trace_segments(u, w, n);
  std::vector<Integer> digits;
  for (const auto& s : segs) digits.push_back(s.digit);
  const StatsSeries st = digit_statistics(digits, delta, n);

  // nu = #{j : T_j < t'}, T_0 = 0, T_{j+1} = T_j + t_j.
  CertifiedReal T = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    if (!certainly_less(T, rep.t_prime)) break;
    ++rep.nu;
    if (j < n) T = T + segs[j].return_time;
  }

  CountQuery q;
  q.form = form;
  q.delta = delta;
  q.kappa = QuadraticSurd(kappa);
  q.kind = RegionKind::ThmReduced;
  q.workers = workers;
  const auto counts = count_region_grid(q, rhos);
  const CertifiedReal c0 = c0_constant();
  const auto nu = static_cast<long long>(rep.nu);

  for (std::size_t i = 0; i < rhos.size(); ++i) {
    VerificationRow row;
    row.rho = rhos[i];
    row.count = counts[i].count;
    const CertifiedReal lr = log(cr(rhos[i]));
    row.log_rho = lr.approx();
    for (std::size_t k = 0; k <= n; ++k) {
      const CertifiedReal need = st.alpha[k] + CertifiedReal(static_cast<long>(k)) * c0 + rep.theta;
      const auto s = (lr - need).sign(1024);
      if (!s || *s < 0) break;
      row.n_lower = k;
    }
    if (row.n_lower) {
      row.bound_lower = static_cast<long long>(st.e[*row.n_lower]) - nu;
      row.pass_lower = static_cast<long long>(row.count) >= row.bound_lower;
    }
    for (std::size_t k = 0; k <= n; ++k) {
      const auto s = (st.omega[k] - rep.theta - lr).sign(1024);
      if (s && *s >= 0) {
        row.n_upper = k;
        break;
      }
    }
    if (!row.n_upper) throw std::logic_error("traced too few segments for bound (ii)");
    row.bound_upper = static_cast<long long>(st.f[*row.n_upper]) + nu;
    row.pass_upper = static_cast<long long>(row.count) <= row.bound_upper;
    rep.rows.push_back(row);
  }

  if (rep.rows.size() == 1) {
    rep.fitted_slope = static_cast<double>(rep.rows[0].count) / rep.rows[0].log_rho;
  } else {
    double mx = 0, my = 0;
    for (const auto& r : rep.rows) {
      mx += r.log_rho;
      my += static_cast<double>(r.count);
    }
    mx /= static_cast<double>(rep.rows.size());
    my /= static_cast<double>(rep.rows.size());
    double sxy = 0, sxx = 0;
    for (const auto& r : rep.rows) {
      sxy += (r.log_rho - mx) * (static_cast<double>(r.count) - my);
      sxx += (r.log_rho - mx) * (r.log_rho - mx);
    }
    rep.fitted_slope = sxx > 0 ? sxy / sxx : 0;
  }
  rep.bracket = slope_bracket(st, 0.1, st.omega_avg.lower);
  return rep;
}

double GaussMeasure::normalizer() { return 2 / std::log(5.0 / 3.0); }

double GaussMeasure::measure(double lo, double hi) {
  if (!(lo >= -0.5 && hi <= 0.5 && lo <= hi)) throw std::domain_error("measure needs -1/2 <= lo <= hi <= 1/2");
  // Antiderivative of 1/(4 - x^2) is 1/4 log((2 + x)/(2 - x)) = 1/2 atanh(x/2).
  return normalizer() * 0.5 * (std::atanh(hi / 2) - std::atanh(lo / 2));
}

namespace {

// log a * mu(x in (0, 1/2] with nu(1/x) = a), a >= 2.
double digit_term(long a) {
  const double ad = static_cast<double>(a);
  const double lo = 1 / (ad + 0.5), hi = std::min(0.5, 1 / (ad - 0.5));
  return std::log(ad) * GaussMeasure::measure(lo, hi);
}

// c * integral_Y^inf log y / (4 y^2 - 1) dy, the midpoint-rule remainder of the digit sum.
double tail_integral(double Y) {
  double sum = 0, term = 1;
  for (int k = 1; k < 30; ++k) {
    const double m = 2 * k - 1;
    term = std::pow(4 * Y * Y, -k) * Y;
    sum += term * (std::log(Y) / m + 1 / (m * m));
    if (term < 1e-30) break;
  }
  return GaussMeasure::normalizer() * sum;
}

}  // namespace

GenericConstants gauss_generic(double delta, double tol) {
  if (!(delta > 0) || !(tol > 0)) throw std::domain_error("gauss_generic needs delta > 0 and tol > 0");
  GenericConstants g;
  g.c = GaussMeasure::normalizer();
  g.k = static_cast<long>(std::floor(2 / delta + 1));
  g.l = static_cast<long>(std::floor(2 / delta - 1.5));
  if (g.l < 2) throw std::domain_error("delta too large: l = floor(2/delta - 3/2) < 2");
  g.e = GaussMeasure::measure(-1.0 / static_cast<double>(g.k), 1.0 / static_cast<double>(g.k));
  g.f = GaussMeasure::measure(-1.0 / static_cast<double>(g.l), 1.0 / static_cast<double>(g.l));

  // Both signs of the digit contribute equally.
  double partial = 0;
  long a = 1;
  auto estimate_at = [&](long N) {
    while (a < N) partial += 2 * digit_term(++a);
    return partial + 2 * tail_integral(static_cast<double>(N) + 0.5);
  };
  long N = 64;
  double prev = estimate_at(N);
  for (;;) {
    N *= 2;
    const double cur = estimate_at(N);
    const bool done = std::abs(cur - prev) < tol / 10;
    prev = cur;
    if (done) break;
  }
  g.terms = N;
  g.alpha = prev;
  g.alpha_partial = partial;
  g.tail = prev - partial;
  return g;
}

double birkhoff_log_digit(double seed, std::size_t steps) {
  double x = seed, sum = 0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < steps; ++i) {
    if (x == 0) x = 0.3819660112501051 - 0.25;  // restart off a rational orbit
    const double y = -1 / x;
    const double a = std::nearbyint(y);
    sum += std::log(std::abs(a));
    ++used;
    x = y - a;
  }
  return used ? sum / static_cast<double>(used) : 0;
}

CertifiedReal region_area(const BigRational& delta, const BigRational& kappa, const BigRational& tau) {
  if (delta <= 0 || kappa <= 0 || tau < kappa) throw std::domain_error("region_area needs delta > 0, tau >= kappa > 0");
  return cr(delta) * log(cr(BigRational(tau / kappa)));
}

MainThresholds main_theorem_thresholds(const BigRational& delta) {
  if (delta <= 0) throw std::domain_error("delta must be positive");
  MainThresholds t;
  t.main_e = 2 / delta + 1;
  t.main_f = 2 / delta - BigRational(3, 2);
  // delta -> sqrt(2 delta) turns 2 delta^-2 into 1/delta.
  t.reduced_e = QuadraticSurd(BigRational(1 / delta + BigRational(1, 2))) + golden_lambda();
  t.reduced_f = QuadraticSurd(BigRational(1 / delta - BigRational(3, 2))) + golden_lambda();
  return t;
}

MainDensities main_theorem_densities(const std::vector<Integer>& digits, const BigRational& delta, std::size_t n,
                                     std::size_t window) {
  if (digits.size() < n || n == 0) throw std::invalid_argument("need 0 < n <= digits");
  const MainThresholds t = main_theorem_thresholds(delta);
  std::vector<double> e_avg(n + 1), f_avg(n + 1), a_avg(n + 1);
  std::size_t e = 0, f = 0;
  double alpha = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const BigRational a(abs(digits[j]));
    if (a >= t.main_e) ++e;
    if (a >= t.main_f) ++f;
    alpha += std::log(mpq_get_d(a.get_mpq_t()));
    const double k = static_cast<double>(j + 1);
    e_avg[j + 1] = static_cast<double>(e) / k;
    f_avg[j + 1] = static_cast<double>(f) / k;
    a_avg[j + 1] = alpha / k;
  }
  MainDensities d;
  d.e = window_of(e_avg, n, window).lower;
  d.f = window_of(f_avg, n, window).upper;
  const WindowEstimate aw = window_of(a_avg, n, window);
  d.alpha_plus = aw.upper;
  d.alpha_minus = aw.lower;
  d.lower_slope = d.e / (d.alpha_plus + 3);
  return d;
}

}  // namespace hforms
