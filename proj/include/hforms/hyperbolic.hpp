#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hforms/numerics/certified.hpp"
#include "hforms/numerics/matrix.hpp"
#include "hforms/numerics/surd.hpp"

namespace hforms {

/// Point of the upper half plane with certified coordinates.
struct HPoint {
  CertifiedReal x;
  CertifiedReal y;
};

/// arccosh(1 + |z1 - z2|^2 / (2 Im z1 Im z2)).
CertifiedReal hyp_distance(const HPoint& z1, const HPoint& z2);

/// Geodesic from the repelling endpoint u to the attracting endpoint w.
struct GeodesicSpec {
  BoundaryPoint u, w;
  std::optional<QuadraticSurd> center;  // empty for vertical geodesics
  std::optional<QuadraticSurd> radius;
};
GeodesicSpec make_geodesic(const BoundaryPoint& u, const BoundaryPoint& w);

/// mu = (23 - 3 sqrt 5)/22.
QuadraticSurd cross_section_mu();

/// The arc C = {|z| = 1, |Re z| < mu}.
struct CrossSectionArc {
  QuadraticSurd mu;
  HPoint right_endpoint;  // mu + i sqrt(1 - mu^2)
  /// x-coordinate (relative to the translate a + C) lies strictly inside.
  bool contains_x(const QuadraticSurd& relative_x) const;
};
CrossSectionArc cross_section_arc();

/// Arc-length coordinate of a point with abscissa x on the semicircle (u, w),
/// increasing toward w: s = 1/2 log((x - u)/(w - x)). Differences of these are
/// hyperbolic lengths. The argument of the log is returned exactly.
QuadraticSurd arc_ratio(const QuadraticSurd& u, const QuadraticSurd& w, const QuadraticSurd& x);

/// Abscissa where the semicircle (u, w) meets |z - a| = 1.
QuadraticSurd circle_crossing_x(const QuadraticSurd& u, const QuadraticSurd& w, const Integer& a);

enum class CuspVerdict { Intersects, Misses, Indeterminate };
const char* to_string(CuspVerdict v);

/// Digit test for excursions into {y > delta^-2}.
CuspVerdict digit_cusp_criterion(const Integer& a, const BigRational& delta);

struct CuspGeometry {
  bool intersects = false;
  /// Abscissas where the semicircle crosses y = delta^-2, when it does.
  std::optional<std::pair<CertifiedReal, CertifiedReal>> arc_x;
  /// Arc-length coordinates of those crossings (same convention as arc_ratio).
  std::optional<std::pair<CertifiedReal, CertifiedReal>> arc_s;
  /// delta < (1 - mu^2)^{1/4}, where each segment meets the horoball in one piece.
  bool unique_component = false;
};

/// Exact test radius > delta^-2 on the semicircle (u, w).
CuspGeometry segment_cusp_geometry(const QuadraticSurd& u, const QuadraticSurd& w, const BigRational& delta);

/// 1/2 log(3 sqrt 5) for |a| >= 3; log 2 - 1/2 d(mu + i sqrt(1 - mu^2), (3 + i sqrt 3)/2) for |a| = 2.
CertifiedReal chi_constant(const Integer& a);

/// Certified comparison outcome.
enum class Check { Holds, Violated, Undecided };
const char* to_string(Check c);

struct CuspFlag {
  BigRational delta;
  CuspVerdict criterion;
  CuspGeometry geometry;
};

struct SegmentRecord {
  std::size_t index = 0;
  Integer digit;
  QuadraticSurd u, w;            // endpoints of the reduced geodesic carrying this segment
  QuadraticSurd entry_x;         // on C
  QuadraticSurd exit_x;          // on digit + C
  CertifiedReal entry_y, exit_y;
  CertifiedReal return_time;     // t_j, hyperbolic length of the segment
  CertifiedReal chi;
  Check length_bracket = Check::Undecided;  // -2 chi <= t - 2 log|a| <= log 3 sqrt 5 + log(3/4 + sqrt 1/2)
  Check length_lower = Check::Undecided;    // left inequality alone
  Check length_upper = Check::Undecided;    // right inequality alone
  std::vector<CuspFlag> cusp;
};

/// The first n coding segments of the H-reduced geodesic (u, w). Each record
/// carries the crossing points, return time, chi and per-delta cusp data.
std::vector<SegmentRecord> trace_segments(const QuadraticSurd& u, const QuadraticSurd& w, std::size_t n,
                                          const std::vector<BigRational>& deltas = {});

/// Upper bound log(3 sqrt 5) + log(3/4 + sqrt(1/2)) = 2 c_0.
CertifiedReal return_time_upper_offset();

struct ReturnTimeCheck {
  Check lower = Check::Undecided;
  Check upper = Check::Undecided;
  Check both() const;
};

/// Certified check of the return-time bracket for one segment.
ReturnTimeCheck check_return_time(const CertifiedReal& t, const Integer& a, const CertifiedReal& chi);

/// 2 arccosh(|tr M| / 2), the translation length of a hyperbolic matrix.
CertifiedReal closed_geodesic_length(const UnimodularMatrix& m);

/// Point g(i) for a determinant-one matrix with surd entries: x exact, y^2 exact.
struct ExactPoint {
  QuadraticSurd x;
  QuadraticSurd y_squared;
  HPoint to_hpoint() const;
};
ExactPoint image_of_i(const SurdMatrix2& g);

}  // namespace hforms
