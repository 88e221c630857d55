#include "hforms/hyperbolic.hpp"

#include <stdexcept>

#include "hforms/forms.hpp"

namespace hforms {

namespace {

CertifiedReal cr(const QuadraticSurd& x) { return CertifiedReal::exact(x); }
CertifiedReal cr(const BigRational& x) { return CertifiedReal::exact(x); }

QuadraticSurd rat(const BigRational& x) { return QuadraticSurd(x); }

}  // namespace

CertifiedReal hyp_distance(const HPoint& z1, const HPoint& z2) {
  if (z1.y.sign() != 1 || z2.y.sign() != 1) throw std::domain_error("hyp_distance needs points with Im z > 0");
  const CertifiedReal dx = z1.x - z2.x, dy = z1.y - z2.y;
  return acosh(CertifiedReal(1) + (dx * dx + dy * dy) / (CertifiedReal(2) * z1.y * z2.y));
}

GeodesicSpec make_geodesic(const BoundaryPoint& u, const BoundaryPoint& w) {
  if (u == w) throw std::domain_error("geodesic endpoints must differ");
  GeodesicSpec g{u, w, std::nullopt, std::nullopt};
  if (!u.is_infinite() && !w.is_infinite()) {
    g.center = (u.value() + w.value()) / QuadraticSurd(2);
    g.radius = (w.value() - u.value()).abs() / QuadraticSurd(2);
  }
  return g;
}

QuadraticSurd cross_section_mu() { return {23, -3, 5, 22}; }

bool CrossSectionArc::contains_x(const QuadraticSurd& relative_x) const { return compare(relative_x.abs(), mu) < 0; }

CrossSectionArc cross_section_arc() {
  const QuadraticSurd mu = cross_section_mu();
  return {mu, HPoint{cr(mu), sqrt(cr(QuadraticSurd(1) - mu * mu))}};
}

QuadraticSurd arc_ratio(const QuadraticSurd& u, const QuadraticSurd& w, const QuadraticSurd& x) {
  return (x - u) / (w - x);
}

QuadraticSurd circle_crossing_x(const QuadraticSurd& u, const QuadraticSurd& w, const Integer& a) {
  const QuadraticSurd A(a);
  const QuadraticSurd su = u - A, sw = w - A;
  const QuadraticSurd den = su + sw;
  if (den.is_zero()) throw std::domain_error("geodesic is concentric with the unit circle translate");
  return A + (su * sw + QuadraticSurd(1)) / den;
}

const char* to_string(CuspVerdict v) {
  switch (v) {
    case CuspVerdict::Intersects: return "intersects";
    case CuspVerdict::Misses: return "misses";
    case CuspVerdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

const char* to_string(Check c) {
  switch (c) {
    case Check::Holds: return "holds";
    case Check::Violated: return "violated";
    case Check::Undecided: return "undecided";
  }
  return "?";
}

CuspVerdict digit_cusp_criterion(const Integer& a, const BigRational& delta) {
  if (abs(a) < 2) throw std::invalid_argument("digit criterion needs |a| >= 2");
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  const BigRational inv2 = 1 / (delta * delta);
  const QuadraticSurd base = rat(2 * inv2) + golden_lambda();
  const QuadraticSurd mag(Integer(abs(a)));
  if (compare(mag, base + rat(BigRational(1, 2))) > 0) return CuspVerdict::Intersects;
  if (compare(mag, base - rat(BigRational(3, 2))) <= 0) return CuspVerdict::Misses;
  return CuspVerdict::Indeterminate;
}

CuspGeometry segment_cusp_geometry(const QuadraticSurd& u, const QuadraticSurd& w, const BigRational& delta) {
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  if (u == w) throw std::domain_error("geodesic endpoints must differ");
  const QuadraticSurd c = (u + w) / QuadraticSurd(2);
  const QuadraticSurd R = (w - u).abs() / QuadraticSurd(2);
  const BigRational h = 1 / (delta * delta);
  CuspGeometry out;
  const QuadraticSurd mu = cross_section_mu();
  const BigRational d4 = h * h;  // delta^-4
  // delta < (1 - mu^2)^{1/4}  <=>  delta^-4 (1 - mu^2) > 1
  out.unique_component = compare(rat(d4) * (QuadraticSurd(1) - mu * mu), QuadraticSurd(1)) > 0;
  out.intersects = compare(R, rat(h)) > 0;
  if (!out.intersects) return out;
  const CertifiedReal half_chord = sqrt(cr(R * R - rat(h * h)));
  const CertifiedReal lo = cr(c) - half_chord, hi = cr(c) + half_chord;
  // Order the crossings along the direction of travel u -> w.
  const bool forward = compare(w, u) > 0;
  const CertifiedReal first = forward ? lo : hi, second = forward ? hi : lo;
  out.arc_x = std::make_pair(first, second);
  const auto s = [&](const CertifiedReal& x) {
    return CertifiedReal(1) / CertifiedReal(2) * log((x - cr(u)) / (cr(w) - x));
  };
  out.arc_s = std::make_pair(s(first), s(second));
  return out;
}

CertifiedReal chi_constant(const Integer& a) {
  if (abs(a) < 2) throw std::invalid_argument("chi is defined for |a| >= 2");
  static const CertifiedReal chi_large = CertifiedReal(1) / CertifiedReal(4) * log(CertifiedReal(45));
  static const CertifiedReal chi_two = [] {
    const HPoint p = cross_section_arc().right_endpoint;
    const HPoint q{cr(BigRational(3, 2)), sqrt(CertifiedReal(3)) / CertifiedReal(2)};
    const CertifiedReal chi = log(CertifiedReal(2)) - hyp_distance(p, q) / CertifiedReal(2);
    const CertifiedReal lo = log(cr(BigRational(16, 11))) / CertifiedReal(2);
    const CertifiedReal hi = log(cr(BigRational(3, 2))) / CertifiedReal(2);
    if (!certainly_less(lo, chi) || !certainly_less(chi, hi)) {
      throw std::logic_error("chi for |a| = 2 left its bracket [1/2 log 16/11, 1/2 log 3/2]");
    }
    return chi;
  }();
  return abs(a) == 2 ? chi_two : chi_large;
}

CertifiedReal return_time_upper_offset() {
  static const CertifiedReal offset =
      log(CertifiedReal(3) * sqrt(CertifiedReal(5))) + log(cr(BigRational(3, 4)) + sqrt(cr(BigRational(1, 2))));
  return offset;
}

namespace {
Check from_sign(const std::optional<int>& s) {
  if (!s) return Check::Undecided;
  return *s >= 0 ? Check::Holds : Check::Violated;
}
}  // namespace

Check ReturnTimeCheck::both() const {
  if (lower == Check::Violated || upper == Check::Violated) return Check::Violated;
  if (lower == Check::Holds && upper == Check::Holds) return Check::Holds;
  return Check::Undecided;
}

ReturnTimeCheck check_return_time(const CertifiedReal& t, const Integer& a, const CertifiedReal& chi) {
  const CertifiedReal excess = t - CertifiedReal(2) * log(cr(QuadraticSurd(Integer(abs(a)))));
  return {from_sign((excess + CertifiedReal(2) * chi).sign(1024)),
          from_sign((return_time_upper_offset() - excess).sign(1024))};
}

CertifiedReal closed_geodesic_length(const UnimodularMatrix& m) {
  const IntMatrix2& e = m.entries();
  const Integer tr = abs(Integer(e.a + e.d));
  if (tr <= 2) throw std::domain_error("matrix is not hyperbolic");
  return CertifiedReal(2) * acosh(cr(make_rational(tr, 2)));
}

HPoint ExactPoint::to_hpoint() const { return {cr(x), sqrt(cr(y_squared))}; }

ExactPoint image_of_i(const SurdMatrix2& g) {
  const QuadraticSurd n = g.c * g.c + g.d * g.d;
  const QuadraticSurd y = n.reciprocal();
  return {(g.a * g.c + g.b * g.d) * y, y * y};
}

std::vector<SegmentRecord> trace_segments(const QuadraticSurd& u0, const QuadraticSurd& w0, std::size_t n,
                                          const std::vector<BigRational>& deltas) {
  if (w0.is_rational()) throw std::invalid_argument("trace needs an irrational attracting endpoint");
  if (!is_h_reduced(u0, w0)) throw std::invalid_argument("trace needs an H-reduced geodesic; run h_reduce first");
  const CrossSectionArc arc = cross_section_arc();
  QuadraticSurd u = u0, w = w0;
  QuadraticSurd entry = circle_crossing_x(u, w, 0);
  if (!arc.contains_x(entry)) throw std::logic_error("reduced geodesic misses the cross-section arc");

  std::vector<SegmentRecord> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    SegmentRecord rec;
    rec.index = j;
    rec.digit = surd_nearest_integer(w);
    const QuadraticSurd A(rec.digit);
    rec.u = u;
    rec.w = w;
    rec.entry_x = entry;
    rec.exit_x = circle_crossing_x(u, w, rec.digit);
    if (!arc.contains_x(rec.exit_x - A)) throw std::logic_error("segment exit is outside the translated arc");
    rec.entry_y = sqrt(cr(QuadraticSurd(1) - entry * entry));
    const QuadraticSurd rel = rec.exit_x - A;
    rec.exit_y = sqrt(cr(QuadraticSurd(1) - rel * rel));
    const QuadraticSurd ratio = arc_ratio(u, w, rec.exit_x) / arc_ratio(u, w, entry);
    rec.return_time = log(cr(ratio)) / CertifiedReal(2);
    rec.chi = chi_constant(rec.digit);
    const ReturnTimeCheck rt = check_return_time(rec.return_time, rec.digit, rec.chi);
    rec.length_lower = rt.lower;
    rec.length_upper = rt.upper;
    rec.length_bracket = rt.both();
    for (const BigRational& delta : deltas) {
      rec.cusp.push_back({delta, digit_cusp_criterion(rec.digit, delta), segment_cusp_geometry(u, w, delta)});
    }
    out.push_back(std::move(rec));

    // Move to the next segment by z -> -1/(z - a).
    u = -(u - A).reciprocal();
    w = -(w - A).reciprocal();
    if (!is_h_reduced(u, w)) throw std::logic_error("coding step produced a geodesic that is not H-reduced");
    const QuadraticSurd next_entry = -rel;
    if (next_entry != circle_crossing_x(u, w, 0)) throw std::logic_error("crossing points disagree after the step");
    entry = next_entry;
  }
  return out;
}

}  // namespace hforms
