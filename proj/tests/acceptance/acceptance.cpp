// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "../unit/generators.hpp"
#include "hforms/counting.hpp"
#include "hforms/forms.hpp"
#include "hforms/hurwitz.hpp"
#include "hforms/hyperbolic.hpp"
#include "hforms/stats.hpp"

using namespace hforms;
using hforms::testing::Rng;
using hforms::testing::uniform;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

BigRational R(long p, long q = 1) { return make_rational(p, q); }

BinaryForm periodic_form(const std::vector<Integer>& block) {
  const QuadraticSurd w = periodic_value(block);
  return form_from_endpoints(w.conjugate(), w);
}

std::vector<BinaryForm> reduced_forms(std::uint64_t seed, int count) {
  Rng rng(seed);
  std::vector<BinaryForm> out;
  while (static_cast<int>(out.size()) < count) {
    const QuadraticSurd w = hforms::testing::random_surd(rng, 60, 300);
    out.push_back(h_reduce(form_from_endpoints(w.conjugate(), w)).reduced);
  }
  return out;
}

// 1. Digit validity of 1000 random expansions.
Outcome digit_validity() {
  const auto t0 = Clock::now();
  Rng rng(1001);
  std::size_t digits = 0, violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const DigitSequence seq = expand(hforms::testing::random_surd(rng, 1000, 10000), 60);
    digits += seq.size();
    violations += validate(seq).violations.size();
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && secs < 10,
          fmt("%zu digits, %zu violations, %.2f s (limit 10 s)", digits, violations, secs)};
}

// 2. expand(periodic_value(D)) reproduces D for every valid block.
Outcome periodic_round_trip() {
  std::vector<long> alphabet;
  for (long a = 2; a <= 6; ++a) alphabet.insert(alphabet.end(), {a, -a});
  std::size_t blocks = 0, mismatches = 0;
  std::vector<Integer> block;
  std::function<void(std::size_t)> rec = [&](std::size_t len) {
    if (block.size() == len) {
      if (!validate_cyclic(block).valid()) return;
      ++blocks;
      const DigitSequence seq = expand(periodic_value(block), 3 * len);
      for (std::size_t k = 0; k < seq.size(); ++k) {
        if (seq[k] != block[k % len]) {
          ++mismatches;
          break;
        }
      }
      return;
    }
    for (long a : alphabet) {
      block.emplace_back(a);
      rec(len);
      block.pop_back();
    }
  };
  for (std::size_t len = 1; len <= 4; ++len) rec(len);
  return {mismatches == 0, fmt("%zu valid blocks, %zu mismatches", blocks, mismatches)};
}

std::vector<SegmentRecord> traced_segments(const std::vector<BigRational>& deltas) {
  std::vector<SegmentRecord> all;
  for (const auto& f : reduced_forms(3003, 100)) {
    auto segs = trace_segments(f.u().value(), f.w().value(), 50, deltas);
    all.insert(all.end(), std::make_move_iterator(segs.begin()), std::make_move_iterator(segs.end()));
  }
  return all;
}

// 3. Return-time bracket on random geodesics and the [3]-periodic one.
Outcome return_time_bracket(const std::vector<SegmentRecord>& segs) {
  std::size_t lower_fail = 0, upper_fail = 0, undecided = 0, wide = 0, lower_fail_a2 = 0;
  for (const auto& s : segs) {
    const ReturnTimeCheck c = check_return_time(s.return_time, s.digit, s.chi);
    if (s.return_time.refine_to_width(1e-9).width() > 1e-9) ++wide;
    if (c.lower == Check::Violated) {
      ++lower_fail;
      if (abs(s.digit) == 2) ++lower_fail_a2;
    }
    if (c.upper == Check::Violated) ++upper_fail;
    if (c.lower == Check::Undecided || c.upper == Check::Undecided) ++undecided;
  }
  const QuadraticSurd w = periodic_value({Integer(3)});
  const CertifiedReal expected = CertifiedReal(2) * acosh(CertifiedReal::exact(make_rational(3, 2)));
  std::size_t periodic_off = 0;
  for (const auto& s : trace_segments(w.conjugate(), w, 50)) {
    if ((s.return_time - expected).refine_to_width(1e-12).width() > 1e-9 ||
        std::abs((s.return_time - expected).approx()) > 1e-9) {
      ++periodic_off;
    }
  }
  const bool pass = lower_fail == 0 && upper_fail == 0 && undecided == 0 && wide == 0 && periodic_off == 0;
  return {pass, fmt("%zu segments: lower side violated %zu (all |a|=2: %s), upper side violated %zu, undecided %zu, "
                    "brackets wider than 1e-9 %zu; [3]-periodic off by > 1e-9: %zu/50",
                    segs.size(), lower_fail, lower_fail == lower_fail_a2 ? "yes" : "no", upper_fail, undecided, wide,
                    periodic_off)};
}

// 4. Digit cusp criterion against exact geometry.
Outcome cusp_consistency(const std::vector<SegmentRecord>& segs) {
  std::size_t checks = 0, contradictions = 0, indeterminate = 0, outside_band = 0;
  const QuadraticSurd lambda = golden_lambda();
  for (const auto& s : segs) {
    for (const auto& f : s.cusp) {
      ++checks;
      if (f.criterion == CuspVerdict::Intersects && !f.geometry.intersects) ++contradictions;
      if (f.criterion == CuspVerdict::Misses && f.geometry.intersects) ++contradictions;
      if (f.criterion == CuspVerdict::Indeterminate) {
        ++indeterminate;
        const BigRational base = 2 / (f.delta * f.delta);
        const QuadraticSurd lo = QuadraticSurd(BigRational(base - make_rational(3, 2))) + lambda;
        const QuadraticSurd hi = QuadraticSurd(BigRational(base + make_rational(1, 2))) + lambda;
        const QuadraticSurd a(Integer(abs(s.digit)));
        if (!(compare(a, lo) > 0 && compare(a, hi) <= 0)) ++outside_band;
      }
    }
  }
  return {contradictions == 0 && outside_band == 0,
          fmt("%zu verdicts, %zu contradictions, %zu indeterminate, %zu outside the band", checks, contradictions,
              indeterminate, outside_band)};
}

// 5. Interval merging against grid scans, and the point-count comparison.
Outcome component_equivalence() {
  Rng rng(5005);
  std::size_t agree = 0, forms = 0, cor_fail = 0, no_threshold = 0, above = 0;
  for (int i = 0; i < 10; ++i) {
    const BinaryForm f = hforms::testing::random_form(rng, 8, 40);
    ++forms;
    const long s = uniform(rng, 3, 9);
    const double sigma = s / 10.0, tau = sigma * std::exp(5.0);
    // tau / sigma = e^5, then e^10 with a coarser grid.
    const ComponentReport rep = component_count(f, QuadraticSurd(R(s * s, 100)), QuadraticSurd(rational_from_double(tau * tau)));
    const GridScan grid = grid_component_count(f, sigma, tau);
    const double tau2 = sigma * std::exp(10.0);
    const ComponentReport rep2 =
        component_count(f, QuadraticSurd(R(s * s, 100)), QuadraticSurd(rational_from_double(tau2 * tau2)));
    const GridScan grid2 = grid_component_count(f, sigma, tau2, 2e-3);
    if (grid_agrees(rep, grid) && grid_agrees(rep2, grid2)) ++agree;

    const PointComponentReport c = compare_points_components(f, R(1, 4), geometric_grid(R(10), R(100000), R(10)));
    if (!c.threshold) {
      ++no_threshold;
      continue;
    }
    for (const auto& row : c.rows) {
      if (row.rho < *c.threshold) continue;
      ++above;
      if (row.diff() < -1 || row.diff() > 1) ++cor_fail;
    }
  }
  return {agree == forms && cor_fail == 0 && no_threshold == 0,
          fmt("grid agreement %zu/%zu forms (tau/sigma = e^5 and e^10); point-vs-component rows above threshold %zu, failures "
              "%zu, forms without threshold %zu",
              agree, forms, above, cor_fail, no_threshold)};
}

// 6. |#H - 2(#G + #G')| <= 2 with kappa = sqrt(delta).
// The time limit applies to the exact enumeration. The full-square scan is an
// independent cross-check and only runs where it is affordable.
Outcome h_split() {
  Rng rng(6006);
  std::size_t rows = 0, fails = 0, brute_mismatch = 0;
  double count_secs = 0;
  for (int i = 0; i < 5; ++i) {
    CountQuery q;
    q.form = hforms::testing::random_form(rng);
    q.delta = R(1, 2);
    q.kind = RegionKind::FullH;
    const auto t0 = Clock::now();
    const auto grid = count_region_grid(q, {R(100), R(1000), R(10000), R(100000)});
    count_secs += seconds_since(t0);
    for (const auto& r : grid) {
      ++rows;
      if (!r.split || !r.split->holds()) ++fails;
    }
    for (long rho : {100L, 300L}) {
      q.rho = R(rho);
      for (RegionKind k : {RegionKind::FullH, RegionKind::ThmMain, RegionKind::Gprime}) {
        q.kind = k;
        if (count_region(q).count != count_region_bruteforce(q).count) ++brute_mismatch;
      }
    }
  }
  return {fails == 0 && brute_mismatch == 0 && count_secs < 120,
          fmt("%zu (form, rho) rows, %zu split failures, exact counting %.2f s (limit 120 s); full-square scan "
              "at rho = 100, 300: %zu mismatches",
              rows, fails, count_secs, brute_mismatch)};
}

// 7. Lower bound (i) and upper bound (ii) on five reduced forms up to rho = 10^6.
Outcome count_bounds() {
  std::size_t rows = 0, admissible = 0, fail_i = 0, fail_ii = 0;
  std::ostringstream notes;
  for (const auto& f : reduced_forms(7007, 5)) {
    const VerificationReport v =
        verify_reduced_bounds(f, R(1, 2), R(1, 2), geometric_grid(R(10), R(1000000), R(10)));
    for (const auto& r : v.rows) {
      ++rows;
      if (r.n_lower) ++admissible;
      if (!r.pass_lower) ++fail_i;
      if (!r.pass_upper) ++fail_ii;
    }
    notes << " nu=" << v.nu;
  }
  return {fail_i == 0 && fail_ii == 0,
          fmt("%zu rows (%zu with an admissible n for (i)), (i) failures %zu, (ii) failures %zu;", rows, admissible,
              fail_i, fail_ii) +
              notes.str()};
}

// 8. No small values below the minimum for badly approximable forms.
Outcome badly_approximable() {
  std::ostringstream out;
  bool pass = true;
  for (const auto& block : {std::vector<Integer>{Integer(3)}, std::vector<Integer>{Integer(2), Integer(-2)}}) {
    const BinaryForm f = periodic_form(block);
    // Minimum of |Q| on primitive points: the values repeat under the stabilizer,
    // so a moderate ball already contains every value class.
    std::optional<QuadraticSurd> m;
    for (const LatticePoint& p : primitive_points(R(300))) {
      const QuadraticSurd v =
          evaluate_form(f, Integer(static_cast<long>(p.x)), Integer(static_cast<long>(p.y))).value.abs();
      if (!m || compare(v, *m) < 0) m = v;
    }
    const double md = m->to_double();
    // delta^2 / 2 just below the minimum.
    const BigRational delta = rational_from_double(std::sqrt(2 * md) * 0.999);
    CountQuery q;
    q.form = f;
    q.delta = delta;
    q.kappa = QuadraticSurd(R(1, 100));
    q.kind = RegionKind::ThmReduced;
    std::uint64_t total = 0;
    for (const auto& r : count_region_grid(q, geometric_grid(R(10), R(1000000), R(10)))) total += r.count;
    q.delta = rational_from_double(md * 0.999);
    q.kind = RegionKind::ThmMain;
    for (const auto& r : count_region_grid(q, {R(1000000)})) total += r.count;
    pass = pass && total == 0;
    out << "block [" << to_string(block[0]) << (block.size() > 1 ? "," + to_string(block[1]) : "")
        << "] min|Q| = " << md << " count " << total << "; ";
  }
  return {pass, out.str()};
}

// 9. Gauss measure and the generic constants.
Outcome gauss_measure() {
  const double c_exact = (CertifiedReal(2) / log(CertifiedReal::exact(make_rational(5, 3)))).approx();
  const double c_err = std::abs(GaussMeasure::normalizer() - c_exact);
  const double total_err = std::abs(GaussMeasure::measure(-0.5, 0.5) - 1);
  const GenericConstants coarse = gauss_generic(0.5, 1e-6), fine = gauss_generic(0.5, 1e-12);
  const double stab = std::abs(coarse.alpha - fine.alpha);
  const double birk = birkhoff_log_digit(0.2137, 100000);
  const double rel = std::abs(birk - fine.alpha) / fine.alpha;
  return {c_err < 1e-9 && total_err < 1e-12 && stab < 1e-6 && rel < 0.05,
          fmt("|c - 2/ln(5/3)| = %.1e, |mu - 1| = %.1e, alpha = %.10f (stability %.1e), Birkhoff %.6f (%.2f%%)",
              c_err, total_err, fine.alpha, stab, birk, 100 * rel)};
}

// 10. Certified constant inequalities and per-term bounds.
Outcome constant_assertions() {
  std::size_t bad = 0;
  for (const auto& c : check_constants()) bad += c.result != Check::Holds;
  const PerTermReport r = per_term_bounds(1000000);
  return {bad == 0 && r.violations == 0 && r.undecided == 0,
          fmt("%zu constant checks not certified; per-term: %zu checks, %zu violations, %zu undecided", bad,
              r.checked, r.violations, r.undecided)};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int k, const char* name, const std::function<Outcome()>& fn) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s [%d] %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", k, name, seconds_since(t0), o.detail.c_str());
    std::fflush(stdout);
  };
  const std::vector<BigRational> deltas{R(3, 10), R(1, 2), R(7, 10)};
  std::vector<SegmentRecord> segs;

  report(1, "digit validity", digit_validity);
  report(2, "periodic round-trips", periodic_round_trip);
  report(3, "return-time bracket", [&] {
    segs = traced_segments(deltas);
    return return_time_bracket(segs);
  });
  report(4, "cusp criterion consistency", [&] { return cusp_consistency(segs); });
  report(5, "component count oracle", component_equivalence);
  report(6, "H versus G + G' split", h_split);
  report(7, "count bounds from digit statistics", count_bounds);
  report(8, "badly approximable vacuity", badly_approximable);
  report(9, "Gauss measure", gauss_measure);
  report(10, "constant assertions", constant_assertions);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
