#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "hforms/counting.hpp"
#include "hforms/forms.hpp"
#include "hforms/hurwitz.hpp"
#include "hforms/hyperbolic.hpp"
#include "hforms/stats.hpp"

namespace py = pybind11;
using namespace hforms;

namespace {

// Exact integers cross the boundary as Python ints through their decimal text.
py::int_ to_py(const Integer& n) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(to_string(n).c_str(), nullptr, 10));
}
Integer from_py(const py::int_& n) { return Integer(py::str(n).cast<std::string>()); }

py::tuple bracket(const CertifiedReal& x) {
  const Interval iv = x.refine_to_width(1e-15);
  return py::make_tuple(iv.lower_double(), iv.upper_double());
}

QuadraticSurd parse_real(const std::string& text) {
  if (text.rfind("surd", 0) == 0 || text.rfind("rat", 0) == 0) return parse_surd(text);
  return QuadraticSurd(parse_rational(text));
}

std::vector<BigRational> rationals(const std::vector<std::string>& xs) {
  std::vector<BigRational> out;
  for (const auto& x : xs) out.push_back(parse_rational(x));
  return out;
}

py::dict expand_py(const std::string& value, std::size_t n) {
  const DigitSequence seq = expand(parse_surd(value), n);
  py::list digits;
  for (const auto& d : seq.digits) digits.append(to_py(d));
  py::dict out;
  out["digits"] = digits;
  out["period"] = seq.period ? py::object(py::make_tuple(seq.period->start, seq.period->length)) : py::none();
  out["valid"] = validate(seq).valid();
  return out;
}

std::string periodic_value_py(const std::vector<py::int_>& block) {
  std::vector<Integer> b;
  for (const auto& x : block) b.push_back(from_py(x));
  return periodic_value(b).to_literal();
}

py::dict reduce_py(const std::string& form) {
  const HReduction red = h_reduce(parse_form(form));
  const IntMatrix2& m = red.gamma.entries();
  py::list word;
  for (const auto& a : red.word) word.append(to_py(a));
  py::dict out;
  out["reduced"] = red.reduced.to_literal();
  out["gamma"] = py::make_tuple(to_py(m.a), to_py(m.b), to_py(m.c), to_py(m.d));
  out["word"] = word;
  out["steps"] = red.steps;
  return out;
}

py::list trace_py(const std::string& form, std::size_t n, const std::vector<std::string>& deltas) {
  const BinaryForm f = parse_form(form);
  const auto segs = trace_segments(f.u().value(), f.w().value(), n, rationals(deltas));
  py::list out;
  for (const auto& s : segs) {
    py::dict row;
    row["digit"] = to_py(s.digit);
    row["return_time"] = bracket(s.return_time);
    row["chi"] = bracket(s.chi);
    row["bracket_lower"] = to_string(s.length_lower);
    row["bracket_upper"] = to_string(s.length_upper);
    py::list cusp;
    for (const auto& c : s.cusp) cusp.append(py::make_tuple(to_string(c.criterion), c.geometry.intersects));
    row["cusp"] = cusp;
    out.append(row);
  }
  return out;
}

std::vector<std::uint64_t> count_py(const std::string& form, const std::string& delta,
                                    const std::vector<std::string>& rhos, const std::string& kind,
                                    const std::optional<std::string>& kappa, unsigned workers) {
  CountQuery q;
  q.form = parse_form(form);
  q.delta = parse_rational(delta);
  q.kind = parse_region_kind(kind);
  if (kappa) q.kappa = parse_real(*kappa);
  q.workers = workers;
  std::vector<std::uint64_t> out;
  for (const auto& r : count_region_grid(q, rationals(rhos))) out.push_back(r.count);
  return out;
}

std::size_t components_py(const std::string& form, const std::string& sigma, const std::string& tau) {
  const QuadraticSurd s = parse_real(sigma), t = parse_real(tau);
  return component_count(parse_form(form), s * s, t * t).count;
}

py::dict constants_py() {
  py::dict out;
  for (const auto& c : constants()) out[py::str(c.name)] = bracket(c.value);
  return out;
}

py::dict generic_py(double delta, double tol) {
  const GenericConstants g = gauss_generic(delta, tol);
  py::dict out;
  out["c"] = g.c;
  out["alpha"] = g.alpha;
  out["e"] = g.e;
  out["f"] = g.f;
  out["k"] = g.k;
  out["l"] = g.l;
  return out;
}

py::dict verify_py(const std::string& form, const std::string& delta, const std::string& kappa,
                   const std::vector<std::string>& rhos) {
  const VerificationReport v =
      verify_reduced_bounds(parse_form(form), parse_rational(delta), parse_rational(kappa), rationals(rhos));
  py::list rows;
  for (const auto& r : v.rows) {
    py::dict row;
    row["rho"] = to_string(r.rho);
    row["count"] = r.count;
    row["bound_lower"] = r.n_lower ? py::object(py::int_(r.bound_lower)) : py::none();
    row["bound_upper"] = r.bound_upper;
    row["pass_lower"] = r.pass_lower;
    row["pass_upper"] = r.pass_upper;
    rows.append(row);
  }
  py::dict out;
  out["theta"] = bracket(v.theta);
  out["nu"] = v.nu;
  out["rows"] = rows;
  out["all_pass"] = v.all_pass();
  out["slope_bracket"] = py::make_tuple(v.bracket.lower, v.bracket.upper);
  return out;
}

}  // namespace

PYBIND11_MODULE(_hurwitz_forms, m) {
  m.doc() = "Hurwitz continued fractions, binary quadratic forms and small-value counts";
  m.attr("__version__") = HFORMS_VERSION;

  py::register_exception<BudgetExhausted>(m, "BudgetExhausted");

  m.def("expand", &expand_py, py::arg("value"), py::arg("n"),
        "Digits of a surd literal; returns {'digits', 'period', 'valid'}.");
  m.def("periodic_value", &periodic_value_py, py::arg("block"), "Surd literal of the purely periodic expansion.");
  m.def("is_h_reduced", [](const std::string& f) { return is_h_reduced(parse_form(f)); }, py::arg("form"));
  m.def("h_reduce", &reduce_py, py::arg("form"));
  m.def("trace", &trace_py, py::arg("form"), py::arg("n"), py::arg("deltas") = std::vector<std::string>{},
        "Coding segments of an H-reduced form.");
  m.def("count", &count_py, py::arg("form"), py::arg("delta"), py::arg("rhos"), py::arg("kind") = "main",
        py::arg("kappa") = std::nullopt, py::arg("workers") = 1u,
        "Exact counts for each radius. kind is main, reduced, full, gprime or wedge.");
  m.def("component_count", &components_py, py::arg("form"), py::arg("sigma"), py::arg("tau"));
  m.def("constants", &constants_py, "Certified constants as (lower, upper) pairs.");
  m.def("gauss_generic", &generic_py, py::arg("delta"), py::arg("tol") = 1e-9);
  m.def("birkhoff_log_digit", &birkhoff_log_digit, py::arg("seed"), py::arg("steps"));
  m.def("verify", &verify_py, py::arg("form"), py::arg("delta"), py::arg("kappa"), py::arg("rhos"));
}
