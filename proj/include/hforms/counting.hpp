#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hforms/forms.hpp"
#include "hforms/numerics/certified.hpp"
#include "hforms/numerics/surd.hpp"

namespace hforms {

struct LatticePoint {
  long long x = 0;
  long long y = 0;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// Primitive pairs with x^2 + y^2 <= rho^2, ordered by x then y.
void for_each_primitive_point(const BigRational& rho, const std::function<void(LatticePoint)>& fn);
std::vector<LatticePoint> primitive_points(const BigRational& rho);
std::uint64_t count_primitive_points(const BigRational& rho);

/// Counting regions, in terms of X = L^-(p), Y = L^+(p), Q = XY.
///   ThmMain     0 < Q < delta,          X > kappa
///   ThmReduced  0 < |Q| < delta^2 / 2,  X > kappa
///   FullH       0 < Q < delta
///   Gprime      0 < Q < delta,          Y > kappa
///   Wedge       0 < Q < delta,          0 < Y < X
enum class RegionKind { ThmMain, ThmReduced, FullH, Gprime, Wedge };
const char* to_string(RegionKind k);
RegionKind parse_region_kind(const std::string& text);

struct CountQuery {
  BinaryForm form = identity_form();
  BigRational delta;
  /// Empty means sqrt(delta).
  std::optional<QuadraticSurd> kappa;
  BigRational rho;
  RegionKind kind = RegionKind::ThmMain;
  bool keep_witnesses = false;
  unsigned workers = 1;
  /// Maximum number of candidate points examined; 0 means no limit.
  std::uint64_t budget = 0;

  QuadraticSurd effective_kappa() const;
  void validate() const;
};

struct Witness {
  LatticePoint p;
  QuadraticSurd value;  // Q(p)
};

/// |#H - 2(#G + #G')| <= 2 with G, G' cut at kappa.
struct SplitCheck {
  std::uint64_t h = 0, g = 0, gprime = 0;
  bool holds() const;
};

struct CountResult {
  CountQuery query;
  std::uint64_t count = 0;
  /// Points whose membership could not be decided exactly. Always 0 for surd
  /// forms; kept in the output format.
  std::uint64_t boundary = 0;
  std::optional<std::vector<Witness>> witnesses;
  std::optional<SplitCheck> split;  // FullH only
  double wall_seconds = 0;
};

class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(std::string what, CountResult partial)
      : std::runtime_error(std::move(what)), partial_(std::move(partial)) {}
  const CountResult& partial() const { return partial_; }

 private:
  CountResult partial_;
};

/// Exact count by enumeration over a cover of the region by parallelograms.
CountResult count_region(const CountQuery& q);

/// One enumeration at the largest rho, then one result per rho (in the given order).
std::vector<CountResult> count_region_grid(const CountQuery& q, const std::vector<BigRational>& rhos);

/// Reference count over the full square |x|, |y| <= rho. Slow; for cross-checks.
CountResult count_region_bruteforce(const CountQuery& q);

/// Geometric grid start, start*m, ... up to stop (inclusive within rounding).
std::vector<BigRational> geometric_grid(const BigRational& start, const BigRational& stop, const BigRational& multiplier);

/// Times t >= 0 with a_{-t} g^{-1} p in W(sigma) = {0 < Y < X <= sigma}.
/// The set is [max(0, 2 log(X/sigma)), log(X/Y)). Bounds are kept in
/// exponentiated form (e^t) so that comparisons stay exact.
struct TimeInterval {
  LatticePoint p;
  QuadraticSurd X, Y;
  QuadraticSurd exp_start;  // max(1, X^2 / sigma^2)
  QuadraticSurd exp_end;    // X / Y
  CertifiedReal start() const;
  CertifiedReal end() const;
};

std::optional<TimeInterval> interval_for_point(const BinaryForm& g, LatticePoint p, const QuadraticSurd& sigma_sq);

struct Component {
  CertifiedReal start, end;  // clipped to [0, 2 log(tau/sigma)]
  std::vector<LatticePoint> points;
};

struct ComponentReport {
  std::size_t count = 0;
  CertifiedReal window;  // 2 log(tau/sigma)
  std::vector<TimeInterval> intervals;
  std::vector<Component> components;
  /// Smallest gap between successive components, when there are at least two.
  std::optional<CertifiedReal> min_gap;
};

/// n(tau, sigma): number of connected components of {t in [0, 2 log(tau/sigma)] :
/// g a_t W(sigma) meets Z^2}. Arguments are squared so that tau may be irrational.
/// Requires tau > sigma > 0 and sigma^2 < 1. Checks the linear-independence
/// dichotomy and throws std::logic_error if it fails.
ComponentReport component_count(const BinaryForm& g, const QuadraticSurd& sigma_sq, const QuadraticSurd& tau_sq,
                                unsigned workers = 1);

/// The same count by scanning t on a grid and searching each triangle g a_t W(sigma)
/// for lattice points in floating point. Independent of the interval machinery.
struct GridScan {
  double step = 0;
  std::size_t count = 0;
  /// Grid runs as [first, last] times.
  std::vector<std::pair<double, double>> runs;
};
GridScan grid_component_count(const BinaryForm& g, double sigma, double tau, double step = 1e-3);

/// True when the two counts agree, or differ only where some interval or gap is
/// shorter than two grid steps.
bool grid_agrees(const ComponentReport& exact, const GridScan& grid);

/// Lower bound on the gap between successive components for W(sigma), from
/// enlarging W(sigma) to the triangle swept by a_s, |s| <= kappa, which keeps
/// area below 1/2 for kappa < -log sigma. Requires 0 < sigma^2 < 1.
CertifiedReal separation_gap(const QuadraticSurd& sigma_sq);

/// ||g e_1||^2 = a^2 + b^2.
QuadraticSurd ge1_norm_sq(const BinaryForm& g);

/// #F(rho) against n(||g e_1||^-1 rho, sqrt(eps)) on a grid of rho.
struct PointComponentRow {
  BigRational rho;
  std::uint64_t f = 0;
  std::size_t n = 0;
  long long diff() const { return static_cast<long long>(f) - static_cast<long long>(n); }
};
struct PointComponentReport {
  BigRational eps;
  std::vector<PointComponentRow> rows;
  /// Smallest grid rho from which |diff| <= 1 holds at every later grid point.
  std::optional<BigRational> threshold;
};
PointComponentReport compare_points_components(const BinaryForm& g, const BigRational& eps, const std::vector<BigRational>& rhos,
                              unsigned workers = 1);

}  // namespace hforms
