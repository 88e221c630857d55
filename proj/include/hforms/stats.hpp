#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hforms/counting.hpp"
#include "hforms/forms.hpp"
#include "hforms/hyperbolic.hpp"
#include "hforms/numerics/certified.hpp"

namespace hforms {

/// min / max of the Cesaro averages x_k / k over k in [first, last].
struct WindowEstimate {
  double lower = 0, upper = 0;
  std::size_t first = 0, last = 0;
};

struct StatsSeries {
  std::vector<Integer> digits;
  BigRational delta;
  std::size_t n = 0;
  /// Index k holds the value for the first k digits, k = 0..n.
  std::vector<CertifiedReal> alpha;  // sum log|a_j|
  std::vector<CertifiedReal> omega;  // sum (log|a_j| - chi_j)
  std::vector<std::size_t> e;        // #{j < k : |a_j| > 2 delta^-2 + 1/2 + lambda}
  std::vector<std::size_t> f;        // #{j < k : |a_j| > 2 delta^-2 - 3/2 + lambda}
  WindowEstimate alpha_avg, omega_avg, e_avg, f_avg;
};

/// Requires digits.size() >= n and delta > 0. `window` is the number of trailing
/// indices used for the limit estimates; 0 means the last half.
StatsSeries digit_statistics(const std::vector<Integer>& digits, const BigRational& delta, std::size_t n,
                             std::size_t window = 0);

/// e threshold 2 delta^-2 + 1/2 + lambda and f threshold 2 delta^-2 - 3/2 + lambda.
QuadraticSurd e_threshold(const BigRational& delta);
QuadraticSurd f_threshold(const BigRational& delta);

struct NamedConstant {
  std::string name;
  CertifiedReal value;
};

/// lambda, mu, c_0, eta, 1/4 log(9/5), 1/2 log(3 sqrt 5), chi for |a| = 2 with its
/// bracket ends, (1 - mu^2)^{1/4}, sqrt(2/pi).
std::vector<NamedConstant> constants();
CertifiedReal c0_constant();
CertifiedReal eta_constant();

struct ConstantCheck {
  std::string name;
  Check result;
};
/// eta > 1/8, sqrt(2/pi) < (1 - mu^2)^{1/4}, chi in [1/2 log(16/11), 1/2 log(3/2)].
std::vector<ConstantCheck> check_constants();

/// log|a| - chi(a) >= 1/4 log(9/5) and >= eta log|a| for 2 <= |a| <= max_a.
/// Both hold with equality at |a| = 3 (3^4 / (3 sqrt 5)^2 = 9/5), which is
/// settled by that identity; every other value is certified by interval arithmetic.
struct PerTermReport {
  long max_a = 0;
  std::size_t checked = 0, violations = 0, undecided = 0;
};
PerTermReport per_term_bounds(long max_a);

struct VerificationRow {
  BigRational rho;
  double log_rho = 0;
  std::uint64_t count = 0;
  /// (i): largest n with alpha_n + c_0 n + theta <= log rho; bound e(delta, n) - nu.
  std::optional<std::size_t> n_lower;
  long long bound_lower = 0;
  bool pass_lower = true;
  /// (ii): smallest n with log rho <= omega_n - theta; bound f(delta, n) + nu.
  std::optional<std::size_t> n_upper;
  long long bound_upper = 0;
  bool pass_upper = true;
};

struct SlopeBracket {
  double lower = 0, upper = 0;
  bool lower_infinite_alpha = false;
};

struct VerificationReport {
  std::string form;
  BigRational delta, kappa;
  CertifiedReal t_prime;  // signed position of g(i) from the first crossing
  CertifiedReal theta;    // |t'|
  std::size_t nu = 0;     // #{j : T_j < t'}, T_j the crossing times
  std::size_t segments = 0;
  std::vector<VerificationRow> rows;
  double fitted_slope = 0;  // least squares of count against log rho
  SlopeBracket bracket;     // asymptotic bracket with epsilon = 0.1, M = omega estimate
  bool all_pass() const;
};

/// Requires an H-reduced form with irrational endpoints, 0 < delta < sqrt(2/pi), kappa > 0.
VerificationReport verify_reduced_bounds(const BinaryForm& form, const BigRational& delta, const BigRational& kappa,
                                         const std::vector<BigRational>& rhos, unsigned workers = 1);

/// [(1 - eps) e^- / (alpha^+ + c_0), (1 + eps)(f^+ + eps) / M] from window estimates.
/// M must be positive and at most max(omega estimate, eta * alpha^- estimate).
SlopeBracket slope_bracket(const StatsSeries& s, double epsilon, double M);

/// mu(E) = c * integral_E dx / (4 - x^2) on [-1/2, 1/2], c = 2 / log(5/3).
class GaussMeasure {
 public:
  static double normalizer();
  /// mu([lo, hi]) for -1/2 <= lo <= hi <= 1/2.
  static double measure(double lo, double hi);
};

struct GenericConstants {
  double c = 0;
  double alpha = 0;             // integral of log|a(x)| d mu
  double alpha_partial = 0;     // sum over |a| <= terms without the tail
  double tail = 0;              // integral estimate of the remainder
  long terms = 0;
  double e = 0, f = 0;          // mu([-1/k, 1/k]), mu([-1/l, 1/l])
  long k = 0, l = 0;
};
/// Throws when l = floor(2/delta - 3/2) < 2.
GenericConstants gauss_generic(double delta, double tol);

/// Average of log|a_j| over `steps` iterations of the Gauss map in double precision.
double birkhoff_log_digit(double seed, std::size_t steps);

/// Area of {0 < Q < delta, kappa < L^- <= tau} = delta log(tau / kappa).
CertifiedReal region_area(const BigRational& delta, const BigRational& kappa, const BigRational& tau);

/// Thresholds of the main theorem (2/delta + 1, 2/delta - 3/2) and the reduced ones
/// they dominate after delta -> sqrt(2 delta) (1/delta + 1/2 + lambda, 1/delta - 3/2 + lambda).
struct MainThresholds {
  BigRational main_e, main_f;
  QuadraticSurd reduced_e, reduced_f;
};
MainThresholds main_theorem_thresholds(const BigRational& delta);

/// Lower density estimate of {|a_j| >= 2/delta + 1} and upper density estimate of
/// {|a_j| >= 2/delta - 3/2}, over the trailing window.
struct MainDensities {
  double e = 0, f = 0;
  double alpha_plus = 0, alpha_minus = 0;
  /// e / (alpha^+ + 3), the slope in part (i).
  double lower_slope = 0;
};
MainDensities main_theorem_densities(const std::vector<Integer>& digits, const BigRational& delta, std::size_t n,
                                     std::size_t window = 0);

}  // namespace hforms
