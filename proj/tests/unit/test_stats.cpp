#include <cmath>
#include <numbers>

#include "doctest.h"
#include "generators.hpp"
#include "hforms/hurwitz.hpp"
#include "hforms/stats.hpp"

using namespace hforms;
using hforms::testing::Rng;

namespace {

BigRational R(long p, long q = 1) { return make_rational(p, q); }

std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

BinaryForm periodic_form(std::initializer_list<long> block) {
  const QuadraticSurd w = periodic_value(ints(block));
  return form_from_endpoints(w.conjugate(), w);
}

}  // namespace

TEST_CASE("digit_statistics on [3, 3, 3, 3]") {
  const StatsSeries s = digit_statistics(ints({3, 3, 3, 3}), R(1, 2), 4);
  REQUIRE(s.alpha.size() == 5);
  CHECK(std::abs(s.alpha[4].approx() - 4 * std::log(3.0)) < 1e-14);
  // 4 log 3 - log 45 = log(9/5)
  CHECK(std::abs(s.omega[4].approx() - 0.5877866649021190) < 1e-14);
  CHECK(s.e[4] == 0);
  CHECK(s.f[4] == 0);
  CHECK(s.alpha[0].sign() == 0);
  CHECK_THROWS(digit_statistics(ints({3, 1}), R(1, 2), 2));
  CHECK_THROWS(digit_statistics(ints({3}), R(1, 2), 2));
}

TEST_CASE("digit_statistics counts thresholds exactly") {
  // delta = 1/2: e threshold 8.5 + lambda = 8.88, f threshold 6.5 + lambda = 6.88.
  const StatsSeries s = digit_statistics(ints({7, -9, 8, 2, -3, 20}), R(1, 2), 6);
  CHECK(s.e == std::vector<std::size_t>{0, 0, 1, 1, 1, 1, 2});
  CHECK(s.f == std::vector<std::size_t>{0, 1, 2, 3, 3, 3, 4});
  CHECK(compare(e_threshold(R(1, 2)), QuadraticSurd(R(17, 2)) + golden_lambda()) == 0);
}

TEST_CASE("property: omega brackets and e <= f <= n") {
  Rng rng(21);
  const CertifiedReal quarter = log(CertifiedReal::exact(R(9, 5))) / CertifiedReal(4);
  for (int i = 0; i < 40; ++i) {
    std::vector<Integer> d;
    const auto n = static_cast<std::size_t>(hforms::testing::uniform(rng, 1, 40));
    for (std::size_t j = 0; j < n; ++j) {
      long a = hforms::testing::uniform(rng, 2, 30);
      if (hforms::testing::uniform(rng, 0, 1)) a = -a;
      d.emplace_back(a);
    }
    const StatsSeries s = digit_statistics(d, R(hforms::testing::uniform(rng, 1, 7), 10), n);
    for (std::size_t k = 0; k <= n; ++k) {
      REQUIRE(s.e[k] <= s.f[k]);
      REQUIRE(s.f[k] <= k);
      // k/4 log(9/5) <= omega_k <= alpha_k
      REQUIRE_FALSE(certainly_less(s.omega[k], CertifiedReal(static_cast<long>(k)) * quarter));
      REQUIRE_FALSE(certainly_less(s.alpha[k], s.omega[k]));
    }
    REQUIRE(s.alpha_avg.lower <= s.alpha_avg.upper);
  }
}

TEST_CASE("constants match closed forms") {
  CHECK(std::abs(c0_constant().approx() - 1.1398920289021777) < 1e-14);
  CHECK(std::abs(eta_constant().approx() - 0.1337566198205182) < 1e-14);
  const auto all = constants();
  CHECK(all.size() == 11);
  for (const auto& c : check_constants()) {
    INFO(c.name);
    CHECK(c.result == Check::Holds);
  }
}

TEST_CASE("per-term bounds") {
  const PerTermReport r = per_term_bounds(2000);
  CHECK(r.checked == 2 * 1999);
  CHECK(r.violations == 0);
  CHECK(r.undecided == 0);
}

TEST_CASE("Gauss measure") {
  CHECK(std::abs(GaussMeasure::normalizer() - 3.915230377942435) < 1e-12);
  CHECK(std::abs(GaussMeasure::measure(-0.5, 0.5) - 1) < 1e-12);
  CHECK(std::abs(GaussMeasure::measure(-1.0 / 3, 1.0 / 3) - 0.6586831610768039) < 1e-12);
  CHECK_THROWS(GaussMeasure::measure(0, 0.6));
  const GenericConstants g = gauss_generic(0.5, 1e-9);
  CHECK(std::abs(g.alpha - 1.6655654505923235) < 1e-8);
  CHECK(g.k == 5);
  CHECK(g.l == 2);
  CHECK(std::abs(g.e - 0.3928360014181247) < 1e-12);
  CHECK(std::abs(g.f - 1) < 1e-12);
  CHECK_THROWS(gauss_generic(1.5, 1e-6));
  const double b = birkhoff_log_digit(0.2137, 100000);
  CHECK(std::abs(b - g.alpha) < 0.05 * g.alpha);
}

TEST_CASE("region_area") {
  CHECK(std::abs(region_area(R(1, 2), R(1), R(7389056099, 1000000000)).approx() - 1) < 1e-9);
  CHECK(region_area(R(1, 2), R(1), R(1)).sign() == 0);
  CHECK_THROWS(region_area(R(1, 2), R(2), R(1)));
}

TEST_CASE("main theorem e threshold dominates the reduced one, f does not") {
  for (long k = 2; k < 40; ++k) {
    const BigRational delta = R(1, k);
    const MainThresholds t = main_theorem_thresholds(delta);
    REQUIRE(compare(QuadraticSurd(t.main_e), t.reduced_e) >= 0);
    // 2/delta - 3/2 > 1/delta - 3/2 + lambda once delta < 1/lambda
    REQUIRE(compare(QuadraticSurd(t.main_f), t.reduced_f) > 0);
  }
  const MainDensities d = main_theorem_densities(ints({9, 3, 9, 3, 9, 3, 9, 3}), R(1, 4), 8, 4);
  CHECK(d.e == doctest::Approx(0.5));
  CHECK(d.f == doctest::Approx(0.6));
}

TEST_CASE("slope_bracket") {
  std::vector<Integer> d;
  for (int j = 0; j < 200; ++j) d.emplace_back(j % 3 ? 3 : -12);
  const StatsSeries s = digit_statistics(d, R(1, 2), 200);
  const double M = s.omega_avg.lower;
  const SlopeBracket a = slope_bracket(s, 0.05, M), b = slope_bracket(s, 0.2, M);
  CHECK(a.lower <= a.upper);
  CHECK(b.lower <= a.lower);
  CHECK(a.upper <= b.upper);
  CHECK_THROWS(slope_bracket(s, 0.1, 10 * M));
}

TEST_CASE("verify: [3]-periodic form has vacuous (i) and zero counts") {
  const BinaryForm f = periodic_form({3});
  const VerificationReport r = verify_reduced_bounds(f, R(1, 2), R(1, 2), {R(100), R(10000)});
  CHECK(r.all_pass());
  for (const auto& row : r.rows) {
    CHECK(row.count == 0);
    REQUIRE(row.n_upper.has_value());
  }
  CHECK(r.theta.sign().value() >= 0);
  CHECK_THROWS(verify_reduced_bounds(f, R(4, 5), R(1, 2), {R(100)}));
}

TEST_CASE("verify: (ii) bound on random reduced forms") {
  Rng rng(22);
  for (int i = 0; i < 3; ++i) {
    const BinaryForm f = h_reduce(hforms::testing::random_form(rng)).reduced;
    const VerificationReport r = verify_reduced_bounds(f, R(1, 2), R(1, 2), {R(100), R(1000), R(10000)});
    INFO(f.to_literal());
    for (const auto& row : r.rows) CHECK(row.pass_upper);
  }
}
