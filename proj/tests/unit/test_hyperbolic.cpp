#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "hforms/forms.hpp"
#include "hforms/hurwitz.hpp"
#include "hforms/hyperbolic.hpp"

using namespace hforms;
using hforms::testing::Rng;

namespace {

QuadraticSurd S(long p, long q, long d, long r) { return QuadraticSurd(Integer(p), Integer(q), Integer(d), Integer(r)); }
CertifiedReal C(long n) { return CertifiedReal(n); }
CertifiedReal Q(long p, long q) { return CertifiedReal::exact(make_rational(p, q)); }

bool near(const CertifiedReal& x, double expected, double tol) {
  const Interval b = x.refine_to_width(tol / 10);
  return std::abs(b.mid_double() - expected) < tol;
}

// Random H-reduced geodesic: a random quadratic irrational and its conjugate, reduced.
std::pair<QuadraticSurd, QuadraticSurd> random_reduced(Rng& rng) {
  const QuadraticSurd w = hforms::testing::random_surd(rng, 60, 300);
  const HReduction red = h_reduce(form_from_endpoints(w.conjugate(), w));
  return {red.reduced.u().value(), red.reduced.w().value()};
}

}  // namespace

TEST_CASE("hyp_distance examples") {
  const HPoint i{C(0), C(1)};
  CHECK(hyp_distance(i, i).refine_to_width(1e-30).contains(0));
  CHECK(near(hyp_distance(i, HPoint{C(0), C(4)}), std::log(4.0), 1e-14));
  const CertifiedReal d = hyp_distance(i, HPoint{C(2), C(1)});
  CHECK(near(d, std::log(3 + 2 * std::sqrt(2.0)), 1e-14));
  // Same value from the segment-length formula log(a^2/2 + a sqrt(a^2 + 4)/2 + 1) at a = 2.
  CHECK(near(d, std::log(2 + std::sqrt(8.0) + 1), 1e-14));
  CHECK_THROWS(hyp_distance(i, HPoint{C(0), C(0)}));
}

TEST_CASE("cross-section arc") {
  const CrossSectionArc arc = cross_section_arc();
  CHECK(arc.mu == S(23, -3, 5, 22));
  CHECK(std::abs(arc.mu.to_double() - 0.740536185) < 1e-9);
  // mu is where the geodesic from lambda to 2 meets the unit circle.
  CHECK(circle_crossing_x(golden_lambda(), 2, 0) == arc.mu);
  const CertifiedReal d = hyp_distance(arc.right_endpoint, HPoint{C(0), C(1)});
  CHECK(near(d, 0.5 * std::log(3 * std::sqrt(5.0)), 1e-12));
  CHECK(arc.contains_x(QuadraticSurd(0)));
  CHECK_FALSE(arc.contains_x(arc.mu));
}

TEST_CASE("trace of the golden geodesic") {
  const auto segs = trace_segments(S(3, -1, 5, 2), S(3, 1, 5, 2), 12, {BigRational(1, 2)});
  const double closed = 2 * std::acosh(1.5);
  for (const auto& s : segs) {
    CHECK(s.digit == 3);
    CHECK(near(s.return_time, closed, 1e-12));
    CHECK(s.return_time.refine_to_width(1e-12).width() <= 1e-9);
    CHECK(near(s.return_time - CertifiedReal(2) * log(C(3)), 2 * std::acosh(1.5) - 2 * std::log(3.0), 1e-9));
    CHECK(s.length_bracket == Check::Holds);
    // Independent route: distance between the computed crossing points.
    const CertifiedReal d = hyp_distance({CertifiedReal::exact(s.entry_x), s.entry_y}, {CertifiedReal::exact(s.exit_x), s.exit_y});
    CHECK((d - s.return_time).refine_to_width(1e-20).contains(0));
    CHECK(s.cusp[0].criterion == CuspVerdict::Misses);
    CHECK_FALSE(s.cusp[0].geometry.intersects);
  }
  CHECK(near(closed_geodesic_length(block_matrix({Integer(3)})), closed, 1e-14));
  CHECK_THROWS(trace_segments(QuadraticSurd(BigRational(1, 2)), S(3, 1, 5, 2), 3));
}

TEST_CASE("trace of the silver geodesic") {
  const QuadraticSurd w = periodic_value({Integer(2), Integer(-2)});
  const auto segs = trace_segments(w.conjugate(), w, 10);
  const CertifiedReal chi2 = chi_constant(2);
  for (const auto& s : segs) {
    CHECK(abs(s.digit) == 2);
    CHECK(s.digit == (s.index % 2 == 0 ? 2 : -2));
    CHECK((s.chi - chi2).refine_to_width(1e-30).contains(0));
    CHECK(s.length_bracket == Check::Holds);
  }
  CertifiedReal period = segs[0].return_time + segs[1].return_time;
  CHECK((period - closed_geodesic_length(block_matrix({Integer(2), Integer(-2)}))).refine_to_width(1e-25).contains(0));
}

TEST_CASE("digit_cusp_criterion examples") {
  CHECK(digit_cusp_criterion(12, 1) == CuspVerdict::Intersects);
  CHECK(digit_cusp_criterion(2, 1) == CuspVerdict::Indeterminate);
  CHECK(digit_cusp_criterion(2, BigRational(1, 2)) == CuspVerdict::Misses);
  CHECK(digit_cusp_criterion(-12, 1) == CuspVerdict::Intersects);
  // Band edges at delta = 1/2: misses up to 8 + lambda - 3/2 ~ 6.88, intersects above 8.88.
  CHECK(digit_cusp_criterion(6, BigRational(1, 2)) == CuspVerdict::Misses);
  CHECK(digit_cusp_criterion(7, BigRational(1, 2)) == CuspVerdict::Indeterminate);
  CHECK(digit_cusp_criterion(8, BigRational(1, 2)) == CuspVerdict::Indeterminate);
  CHECK(digit_cusp_criterion(9, BigRational(1, 2)) == CuspVerdict::Intersects);
  CHECK_THROWS(digit_cusp_criterion(1, BigRational(1, 2)));
}

TEST_CASE("segment_cusp_geometry examples") {
  const auto hit = segment_cusp_geometry(QuadraticSurd(BigRational(1, 5)), QuadraticSurd(BigRational(61, 2)), BigRational(3, 10));
  CHECK(hit.intersects);
  REQUIRE(hit.arc_x.has_value());
  // Chord of radius 15.15 at height 100/9 around center 15.35.
  const double half = std::sqrt(15.15 * 15.15 - (100.0 / 9) * (100.0 / 9));
  CHECK(near(hit.arc_x->first, 15.35 - half, 1e-12));
  CHECK(near(hit.arc_x->second, 15.35 + half, 1e-12));
  CHECK(certainly_less(hit.arc_s->first, hit.arc_s->second));
  CHECK(hit.unique_component);
  const auto miss = segment_cusp_geometry(QuadraticSurd(BigRational(1, 5)), QuadraticSurd(BigRational(13, 5)), BigRational(1, 2));
  CHECK_FALSE(miss.intersects);
  CHECK_FALSE(segment_cusp_geometry(0, 3, BigRational(82, 100)).unique_component);
  CHECK(segment_cusp_geometry(0, 3, BigRational(81, 100)).unique_component);
}

TEST_CASE("chi_constant examples") {
  CHECK(near(chi_constant(5), 0.5 * std::log(3 * std::sqrt(5.0)), 1e-12));
  const Interval two = chi_constant(2).refine_to_width(1e-20);
  CHECK(two.lower_double() >= 0.187346);
  CHECK(two.upper_double() <= 0.202733);
  CHECK((chi_constant(-2) - chi_constant(2)).refine_to_width(1e-30).contains(0));
  CHECK_THROWS(chi_constant(1));
}

TEST_CASE("property: return-time bracket and digit agreement on random reduced geodesics") {
  Rng rng(37);
  const std::vector<BigRational> deltas{BigRational(3, 10), BigRational(1, 2), BigRational(7, 10)};
  for (int i = 0; i < 40; ++i) {
    const auto [u, w] = random_reduced(rng);
    const auto segs = trace_segments(u, w, 30, deltas);
    const auto digits = expand(w, 30).digits;
    for (const auto& s : segs) {
      REQUIRE(s.digit == digits[s.index]);
      REQUIRE(s.length_upper == Check::Holds);
      // The lower side can fail for |a| = 2: the exit may land left of a + C'.
      if (abs(s.digit) >= 3) REQUIRE(s.length_lower == Check::Holds);
      REQUIRE(is_h_reduced(s.u, s.w));
      for (const auto& f : s.cusp) {
        if (f.criterion == CuspVerdict::Intersects) REQUIRE(f.geometry.intersects);
        if (f.criterion == CuspVerdict::Misses) REQUIRE_FALSE(f.geometry.intersects);
      }
    }
  }
}

TEST_CASE("lower return-time bound fails for |a| = 2 near u = lambda, w = 2") {
  // u = lambda, w = (198 + sqrt 5)/100 is H-reduced with digit 2; the exit is at 2 - 0.6166.
  const QuadraticSurd lam = golden_lambda();
  const QuadraticSurd w = S(198, 1, 5, 100);
  REQUIRE(is_h_reduced(lam, w));
  const auto segs = trace_segments(lam, w, 1, {});
  REQUIRE(segs[0].digit == 2);
  CHECK(segs[0].length_lower == Check::Violated);
  CHECK(segs[0].length_upper == Check::Holds);
  CHECK(near(segs[0].return_time, 0.870339431011252, 1e-12));
}

TEST_CASE("property: one period of return times equals the closed geodesic length") {
  Rng rng(41);
  int tried = 0;
  while (tried < 30) {
    std::vector<Integer> block;
    const long len = hforms::testing::uniform(rng, 1, 4);
    for (long k = 0; k < len; ++k) {
      const long mag = hforms::testing::uniform(rng, 2, 9);
      block.emplace_back(hforms::testing::uniform(rng, 0, 1) ? mag : -mag);
    }
    if (!validate_cyclic(block).valid()) continue;
    const QuadraticSurd w = periodic_value(block);
    if (!is_h_reduced(w.conjugate(), w)) continue;
    ++tried;
    const auto segs = trace_segments(w.conjugate(), w, block.size());
    CertifiedReal total(0);
    for (const auto& s : segs) total = total + s.return_time;
    REQUIRE((total - closed_geodesic_length(block_matrix(block))).refine_to_width(1e-25).contains(0));
  }
}
