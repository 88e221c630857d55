#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hforms/numerics/certified.hpp"
#include "hforms/numerics/matrix.hpp"
#include "hforms/numerics/surd.hpp"

namespace hforms {

/// lambda = (3 - sqrt 5)/2.
QuadraticSurd golden_lambda();

/// Q(x, y) = (a y + b x)(c y + d x) with ad - bc = 1, attached to
/// g = [[a, -c], [-b, d]]. With (X, Y) = g^{-1}(x, y) = (d x + c y, b x + a y)
/// the factors are L^-(x, y) = X and L^+(x, y) = Y, so Q = X Y. The endpoints
/// are u = g(0) = -c/d and w = g(inf) = -a/b.
class BinaryForm {
 public:
  /// Any determinant-one matrix; endpoints may be infinite.
  static BinaryForm from_matrix(const SurdMatrix2& g);

  const QuadraticSurd& a() const { return a_; }
  const QuadraticSurd& b() const { return b_; }
  const QuadraticSurd& c() const { return c_; }
  const QuadraticSurd& d() const { return d_; }
  SurdMatrix2 g() const;
  SurdMatrix2 g_inverse() const;
  const BoundaryPoint& u() const { return u_; }
  const BoundaryPoint& w() const { return w_; }

  /// Q_{gamma g}; satisfies Q'(gamma p) = Q(p).
  BinaryForm act(const UnimodularMatrix& gamma) const;

  /// Coefficients as doubles, for fast filters.
  std::array<double, 4> approx() const { return {a_.to_double(), b_.to_double(), c_.to_double(), d_.to_double()}; }

  /// form(a=..., b=..., c=..., d=...)
  std::string to_literal() const;
  std::string to_json() const;

  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;

 private:
  BinaryForm(QuadraticSurd a, QuadraticSurd b, QuadraticSurd c, QuadraticSurd d);

  QuadraticSurd a_, b_, c_, d_;
  BoundaryPoint u_, w_;
};

/// Requires ad - bc = 1 exactly and b != 0.
BinaryForm form_from_coefficients(const QuadraticSurd& a, const QuadraticSurd& b, const QuadraticSurd& c,
                                  const QuadraticSurd& d);

/// The form with g = [[w, u/(w-u)], [1, 1/(w-u)]], so g(0) = u and g(inf) = w.
/// u and w must be finite, distinct, and share a radicand (or be rational).
BinaryForm form_from_endpoints(const QuadraticSurd& u, const QuadraticSurd& w);

/// Q_0(x, y) = x y, from the identity matrix.
BinaryForm identity_form();

struct FormValue {
  QuadraticSurd value;   // Q(x, y)
  QuadraticSurd lplus;   // L^+(x, y) = b x + a y
  QuadraticSurd lminus;  // L^-(x, y) = d x + c y
};

FormValue evaluate_form(const BinaryForm& q, const Integer& x, const Integer& y);

/// |w| > 2 and sgn(w) u in [lambda - 1, lambda], boundary included.
bool is_h_reduced(const QuadraticSurd& u, const QuadraticSurd& w);
bool is_h_reduced(const BinaryForm& q);

struct HReduction {
  UnimodularMatrix gamma;
  BinaryForm reduced;
  std::size_t steps = 0;
  /// Digits a used by the moves z -> -1/(z - a), in order.
  std::vector<Integer> word;
};

class HReductionFailed : public std::runtime_error {
 public:
  HReductionFailed(UnimodularMatrix partial, std::vector<Integer> word);
  const UnimodularMatrix& partial() const { return partial_; }
  const std::vector<Integer>& word() const { return word_; }

 private:
  UnimodularMatrix partial_;
  std::vector<Integer> word_;
};

inline constexpr std::size_t kDefaultReduceSteps = 10000;

/// Applies z -> -1/(z - nu(w_j)) to both endpoints until the pair is H-reduced.
/// The first move carries the integer translation by -nu(w).
HReduction h_reduce(const BinaryForm& q, std::size_t max_steps = kDefaultReduceSteps);

/// g a_t g^{-1} v with a_t = diag(e^{t/2}, e^{-t/2}).
std::array<CertifiedReal, 2> flow_image(const SurdMatrix2& g, const CertifiedReal& t,
                                        const std::array<CertifiedReal, 2>& v);

/// Parses form(a=..,b=..,c=..,d=..) or endpoints(u=..,w=..).
BinaryForm parse_form(const std::string& text);

}  // namespace hforms
