// hforms command-line front end.
//
// Every run writes a header with the library version and the resolved
// configuration, followed by one or more named tables.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hforms/counting.hpp"
#include "hforms/forms.hpp"
#include "hforms/hurwitz.hpp"
#include "hforms/hyperbolic.hpp"
#include "hforms/stats.hpp"

using json = nlohmann::ordered_json;
using namespace hforms;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kBudget = 3;

struct Section {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

struct Report {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<Section> sections;
  bool partial = false;
};

std::string cell(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  if (v.is_null()) return "";
  return v.dump();
}

void write_csv(std::ostream& os, const Report& r) {
  os << "# hforms " << HFORMS_VERSION << "\n";
  for (const auto& [k, v] : r.config) os << "# " << k << "=" << v << "\n";
  if (r.partial) os << "# partial\n";
  for (const auto& s : r.sections) {
    os << "# section=" << s.name << "\n";
    for (std::size_t i = 0; i < s.columns.size(); ++i) os << (i ? "," : "") << s.columns[i];
    os << "\n";
    for (const auto& row : s.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell(row[i]);
      os << "\n";
    }
  }
}

void write_json(std::ostream& os, const Report& r) {
  json out;
  out["hforms_version"] = HFORMS_VERSION;
  json cfg = json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  out["config"] = cfg;
  out["partial"] = r.partial;
  json sections = json::object();
  for (const auto& s : r.sections) {
    json rows = json::array();
    for (const auto& row : s.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[s.columns[i]] = row[i];
      rows.push_back(obj);
    }
    sections[s.name] = rows;
  }
  out["sections"] = sections;
  os << out.dump(2) << "\n";
}

struct Common {
  std::string format = "csv";
  std::string output = "-";
  unsigned workers = 1;
  long precision = 256;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", c.output, "Output path, - for stdout");
  sub->add_option("--workers", c.workers, "Worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--precision", c.precision, "Precision cap in bits")->check(CLI::Range(128L, 1L << 20));
}

void emit(const Common& c, const Report& r) {
  auto write = [&](std::ostream& os) { c.format == "json" ? write_json(os, r) : write_csv(os, r); };
  if (c.output == "-") {
    write(std::cout);
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw std::invalid_argument("cannot open output file " + c.output);
  write(f);
}

std::vector<std::pair<std::string, std::string>> resolved_config(const CLI::App* sub) {
  std::vector<std::pair<std::string, std::string>> cfg{{"subcommand", sub->get_name()}};
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help") continue;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    } else {
      value = opt->get_default_str();
    }
    cfg.emplace_back(name, value);
  }
  return cfg;
}

/// Rational literal, decimal, or surd(...) / rat(...).
QuadraticSurd parse_real(const std::string& text) {
  if (text.rfind("surd", 0) == 0 || text.rfind("rat", 0) == 0) return parse_surd(text);
  return QuadraticSurd(parse_rational(text));
}

std::vector<BigRational> parse_list(const std::string& text) {
  std::vector<BigRational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_rational(item));
  }
  return out;
}

struct Grid {
  std::string rho, start, stop, mult = "10";
};

void add_grid(CLI::App* sub, Grid& g) {
  sub->add_option("--rho", g.rho, "Single radius or comma list");
  sub->add_option("--rho-start", g.start, "First radius of a geometric grid");
  sub->add_option("--rho-stop", g.stop, "Last radius of a geometric grid");
  sub->add_option("--rho-mult", g.mult, "Grid multiplier (> 1)");
}

std::vector<BigRational> grid_of(const Grid& g) {
  if (!g.rho.empty()) {
    if (!g.start.empty() || !g.stop.empty()) throw std::invalid_argument("give either --rho or --rho-start/--rho-stop");
    return parse_list(g.rho);
  }
  if (g.start.empty() || g.stop.empty()) throw std::invalid_argument("a radius is required: --rho or --rho-start/--rho-stop");
  return geometric_grid(parse_rational(g.start), parse_rational(g.stop), parse_rational(g.mult));
}

std::pair<json, json> bracket(const CertifiedReal& x, long cap) {
  const Interval iv = x.refine_to_width(1e-15, cap);
  return {format_lower(iv), format_upper(iv)};
}

std::string str(const BigRational& x) { return to_string(x); }
std::string str(const Integer& x) { return to_string(x); }

/// Reduces when needed, recording the reduction in the report.
BinaryForm reduced_form(const std::string& literal, Report& rep) {
  const BinaryForm f = parse_form(literal);
  if (is_h_reduced(f)) return f;
  const HReduction red = h_reduce(f);
  rep.config.emplace_back("reduced_form", red.reduced.to_literal());
  return red.reduced;
}

// ---- subcommands ----

Report run_expand(const std::string& value, std::size_t n) {
  Report rep;
  const DigitSequence seq = expand(parse_surd(value), n);
  const ValidityReport valid = validate(seq);
  Section digits{"digits", {"j", "digit", "in_period"}, {}};
  for (std::size_t j = 0; j < seq.size(); ++j) {
    const bool in_period = seq.period && j >= seq.period->start;
    digits.rows.push_back({j, str(seq[j]), in_period});
  }
  Section summary{"summary", {"count", "period_start", "period_length", "valid", "violations"}, {}};
  summary.rows.push_back({seq.size(), seq.period ? json(seq.period->start) : json(nullptr),
                          seq.period ? json(seq.period->length) : json(nullptr), valid.valid(),
                          valid.violations.size()});
  rep.sections = {digits, summary};
  return rep;
}

Report run_reduce(const std::string& literal) {
  Report rep;
  const BinaryForm f = parse_form(literal);
  const HReduction red = h_reduce(f);
  const IntMatrix2& m = red.gamma.entries();
  std::string word;
  for (const auto& a : red.word) word += (word.empty() ? "" : " ") + str(a);
  Section s{"reduction",
            {"steps", "gamma_a", "gamma_b", "gamma_c", "gamma_d", "reduced", "u", "w", "word"},
            {}};
  s.rows.push_back({red.steps, str(m.a), str(m.b), str(m.c), str(m.d), red.reduced.to_literal(),
                    red.reduced.u().to_literal(), red.reduced.w().to_literal(), word});
  rep.sections = {s};
  return rep;
}

Report run_trace(const std::string& literal, std::size_t n, const std::string& deltas_text, long cap) {
  Report rep;
  const BinaryForm f = reduced_form(literal, rep);
  const auto deltas = parse_list(deltas_text);
  const auto segs = trace_segments(f.u().value(), f.w().value(), n, deltas);
  Section s{"segments",
            {"j", "digit", "entry_x", "exit_x", "t_lower", "t_upper", "chi_lower", "chi_upper", "bracket",
             "bracket_lower_side", "bracket_upper_side"},
            {}};
  for (const auto& d : deltas) {
    s.columns.push_back("cusp_criterion_" + str(d));
    s.columns.push_back("cusp_geometry_" + str(d));
  }
  for (const auto& r : segs) {
    const auto [tl, tu] = bracket(r.return_time, cap);
    const auto [cl, cu] = bracket(r.chi, cap);
    std::vector<json> row{r.index,         str(r.digit),
                          r.entry_x.to_literal(), r.exit_x.to_literal(),
                          tl,              tu,
                          cl,              cu,
                          to_string(r.length_bracket), to_string(r.length_lower),
                          to_string(r.length_upper)};
    for (const auto& c : r.cusp) {
      row.emplace_back(to_string(c.criterion));
      row.emplace_back(c.geometry.intersects ? "intersects" : "misses");
    }
    s.rows.push_back(std::move(row));
  }
  rep.sections = {s};
  return rep;
}

std::vector<json> count_row(const CountResult& r, const char* status) {
  std::vector<json> row{str(r.query.rho), to_string(r.query.kind), r.count, r.boundary};
  if (r.split) {
    row.insert(row.end(), {r.split->h, r.split->g, r.split->gprime, r.split->holds()});
  } else {
    row.insert(row.end(), {nullptr, nullptr, nullptr, nullptr});
  }
  row.emplace_back(status);
  return row;
}

int run_count(CountQuery q, const std::vector<BigRational>& rhos, const std::string& witness_path, Report& rep) {
  Section s{"counts", {"rho", "kind", "count", "boundary", "h", "g", "gprime", "split_ok", "status"}, {}};
  int code = kOk;
  std::vector<CountResult> results;
  try {
    results = count_region_grid(q, rhos);
  } catch (const BudgetExhausted& e) {
    rep.partial = true;
    code = kBudget;
    std::cerr << "budget exhausted: " << e.what() << "\n";
    results = {e.partial()};
  }
  for (const auto& r : results) s.rows.push_back(count_row(r, code == kOk ? "ok" : "partial"));
  rep.sections = {s};
  if (!witness_path.empty()) {
    json dump = json::array();
    for (const auto& r : results) {
      json pts = json::array();
      if (r.witnesses) {
        for (const auto& w : *r.witnesses) pts.push_back({{"x", w.p.x}, {"y", w.p.y}, {"q", w.value.to_literal()}});
      }
      dump.push_back({{"rho", str(r.query.rho)}, {"count", r.count}, {"witnesses", pts}});
    }
    std::ofstream f(witness_path);
    if (!f) throw std::invalid_argument("cannot open witness file " + witness_path);
    f << dump.dump(2) << "\n";
  }
  return code;
}

Report run_components(const std::string& literal, const std::string& sigma_text, const std::string& tau_text,
                      const std::string& eps_text, const std::vector<BigRational>& rhos, unsigned workers,
                      long cap) {
  Report rep;
  const BinaryForm f = parse_form(literal);
  const QuadraticSurd sigma = parse_real(sigma_text), tau = parse_real(tau_text);
  const ComponentReport cr = component_count(f, sigma * sigma, tau * tau, workers);
  Section comps{"components", {"index", "start_lower", "start_upper", "end_lower", "end_upper", "points"}, {}};
  for (std::size_t i = 0; i < cr.components.size(); ++i) {
    const auto& c = cr.components[i];
    const auto [sl, su] = bracket(c.start, cap);
    const auto [el, eu] = bracket(c.end, cap);
    comps.rows.push_back({i, sl, su, el, eu, c.points.size()});
  }
  const auto [wl, wu] = bracket(cr.window, cap);
  Section summary{"summary", {"count", "window_lower", "window_upper", "min_gap_lower", "min_gap_upper",
                              "separation_gap_lower", "separation_gap_upper"}, {}};
  std::pair<json, json> gap{nullptr, nullptr};
  if (cr.min_gap) gap = bracket(*cr.min_gap, cap);
  const auto [gl, gu] = bracket(separation_gap(sigma * sigma), cap);
  summary.rows.push_back({cr.count, wl, wu, gap.first, gap.second, gl, gu});
  rep.sections = {summary, comps};
  if (!eps_text.empty()) {
    const PointComponentReport cmp = compare_points_components(f, parse_rational(eps_text), rhos, workers);
    Section s{"points_vs_components", {"rho", "f", "n", "diff", "at_or_above_threshold"}, {}};
    for (const auto& row : cmp.rows) {
      const bool above = cmp.threshold && row.rho >= *cmp.threshold;
      s.rows.push_back({str(row.rho), row.f, row.n, row.diff(), above});
    }
    rep.sections.push_back(s);
  }
  return rep;
}

Report run_verify(const std::string& literal, const std::string& delta, const std::string& kappa,
                  const std::vector<BigRational>& rhos, unsigned workers, long cap) {
  Report rep;
  const BinaryForm f = reduced_form(literal, rep);
  const VerificationReport v = verify_reduced_bounds(f, parse_rational(delta), parse_rational(kappa), rhos, workers);
  Section rows{"rows",
               {"rho", "log_rho", "count", "n_lower", "bound_lower", "pass_lower", "n_upper", "bound_upper",
                "pass_upper"},
               {}};
  for (const auto& r : v.rows) {
    rows.rows.push_back({str(r.rho), r.log_rho, r.count, r.n_lower ? json(*r.n_lower) : json(nullptr),
                         r.n_lower ? json(r.bound_lower) : json(nullptr), r.pass_lower,
                         r.n_upper ? json(*r.n_upper) : json(nullptr), r.bound_upper, r.pass_upper});
  }
  const auto [tl, tu] = bracket(v.theta, cap);
  Section summary{"summary",
                  {"form", "theta_lower", "theta_upper", "nu", "segments", "fitted_slope", "slope_bracket_lower",
                   "slope_bracket_upper", "all_pass"},
                  {}};
  summary.rows.push_back(
      {v.form, tl, tu, v.nu, v.segments, v.fitted_slope, v.bracket.lower, v.bracket.upper, v.all_pass()});
  rep.sections = {summary, rows};
  return rep;
}

Report run_generic(double delta, double tol, double seed, std::size_t steps) {
  Report rep;
  const GenericConstants g = gauss_generic(delta, tol);
  Section s{"generic", {"c", "alpha", "alpha_partial", "tail", "terms", "k", "l", "e", "f", "birkhoff_alpha"}, {}};
  s.rows.push_back({g.c, g.alpha, g.alpha_partial, g.tail, g.terms, g.k, g.l, g.e, g.f,
                    birkhoff_log_digit(seed, steps)});
  rep.sections = {s};
  return rep;
}

Report run_constants(long cap) {
  Report rep;
  Section values{"constants", {"name", "lower", "upper"}, {}};
  for (const auto& c : constants()) {
    const auto [lo, hi] = bracket(c.value, cap);
    values.rows.push_back({c.name, lo, hi});
  }
  Section checks{"checks", {"name", "result"}, {}};
  for (const auto& c : check_constants()) checks.rows.push_back({c.name, to_string(c.result)});
  rep.sections = {values, checks};
  return rep;
}

/// key=value lines, '#' comments. `subcommand=name` selects the subcommand;
/// every other key becomes --key=value ahead of the command-line flags.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out, rest;
  std::string path, sub;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--config", "cannot read " + path);
  std::vector<std::string> flags;
  std::string line;
  while (std::getline(f, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw CLI::ValidationError("--config", "line without '=': " + line);
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "subcommand") {
      sub = value;
    } else {
      flags.push_back("--" + key + "=" + value);
    }
  }
  // The subcommand named on the command line wins over the file.
  if (!rest.empty() && rest.front().rfind("-", 0) != 0) {
    sub = rest.front();
    rest.erase(rest.begin());
  }
  if (sub.empty()) throw CLI::ValidationError("--config", "no subcommand given");
  out.push_back(sub);
  out.insert(out.end(), flags.begin(), flags.end());
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hurwitz continued fractions, binary quadratic forms and small-value counts"};
  app.set_version_flag("--version", std::string(HFORMS_VERSION));
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
  Common common;

  std::string value, form, delta = "1/2", kappa, sigma, tau, eps, kind = "main", witnesses, deltas;
  std::size_t n = 20, steps = 100000;
  std::uint64_t budget = 0;
  double fdelta = 0.5, tol = 1e-9, seed = 0.2137;
  Grid grid;

  auto* expand_cmd = app.add_subcommand("expand", "Hurwitz digits of a quadratic surd");
  expand_cmd->add_option("--value", value, "Surd literal surd(p,q,d,r)")->required();
  expand_cmd->add_option("--n", n, "Number of digits");
  add_common(expand_cmd, common);

  auto* reduce_cmd = app.add_subcommand("reduce", "H-reduce a form");
  reduce_cmd->add_option("--form", form, "Form literal form(a=..., b=..., c=..., d=...)")->required();
  add_common(reduce_cmd, common);

  auto* trace_cmd = app.add_subcommand("trace", "Coding segments of the form's geodesic");
  trace_cmd->add_option("--form", form, "Form literal")->required();
  trace_cmd->add_option("--n", n, "Number of segments");
  trace_cmd->add_option("--delta", deltas, "Comma list of cusp depths");
  add_common(trace_cmd, common);

  auto* count_cmd = app.add_subcommand("count", "Count primitive points in a region");
  count_cmd->add_option("--form", form, "Form literal")->required();
  count_cmd->add_option("--delta", delta, "Value bound");
  count_cmd->add_option("--kappa", kappa, "Cut on L^- (default sqrt(delta))");
  count_cmd->add_option("--kind", kind, "Region")->check(CLI::IsMember({"main", "reduced", "full", "gprime", "wedge"}));
  count_cmd->add_option("--witnesses", witnesses, "JSON file for the points found");
  count_cmd->add_option("--budget", budget, "Candidate budget, 0 for none");
  add_grid(count_cmd, grid);
  add_common(count_cmd, common);

  auto* comp_cmd = app.add_subcommand("components", "Component count n(tau, sigma) and the point-count comparison");
  comp_cmd->add_option("--form", form, "Form literal")->required();
  comp_cmd->add_option("--sigma", sigma, "Wedge size, sigma^2 < 1")->required();
  comp_cmd->add_option("--tau", tau, "Upper end, tau > sigma")->required();
  comp_cmd->add_option("--eps", eps, "Also compare #F(rho) with n for this epsilon");
  add_grid(comp_cmd, grid);
  add_common(comp_cmd, common);

  auto* verify_cmd = app.add_subcommand("verify", "Check the reduced-region bounds against exact counts");
  verify_cmd->add_option("--form", form, "Form literal")->required();
  verify_cmd->add_option("--delta", delta, "0 < delta < sqrt(2/pi)");
  verify_cmd->add_option("--kappa", kappa, "Cut on L^-")->default_str("1");
  add_grid(verify_cmd, grid);
  add_common(verify_cmd, common);

  auto* generic_cmd = app.add_subcommand("generic", "Gauss-measure generic constants");
  generic_cmd->add_option("--delta", fdelta, "delta");
  generic_cmd->add_option("--tol", tol, "Series tolerance");
  generic_cmd->add_option("--seed", seed, "Birkhoff seed in (-1/2, 1/2)");
  generic_cmd->add_option("--steps", steps, "Birkhoff steps");
  add_common(generic_cmd, common);

  auto* const_cmd = app.add_subcommand("constants", "Certified constants and inequalities");
  add_common(const_cmd, common);

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  const CLI::App* sub = app.get_subcommands().front();
  Report rep;
  int code = kOk;
  try {
    if (sub == expand_cmd) {
      rep = run_expand(value, n);
    } else if (sub == reduce_cmd) {
      rep = run_reduce(form);
    } else if (sub == trace_cmd) {
      rep = run_trace(form, n, deltas, common.precision);
    } else if (sub == count_cmd) {
      CountQuery q;
      q.form = parse_form(form);
      q.delta = parse_rational(delta);
      if (!kappa.empty()) q.kappa = parse_real(kappa);
      q.kind = parse_region_kind(kind);
      q.keep_witnesses = !witnesses.empty();
      q.workers = common.workers;
      q.budget = budget;
      code = run_count(q, grid_of(grid), witnesses, rep);
    } else if (sub == comp_cmd) {
      const std::vector<BigRational> rhos = eps.empty() ? std::vector<BigRational>{} : grid_of(grid);
      rep = run_components(form, sigma, tau, eps, rhos, common.workers, common.precision);
    } else if (sub == verify_cmd) {
      rep = run_verify(form, delta, kappa.empty() ? "1" : kappa, grid_of(grid), common.workers, common.precision);
    } else if (sub == generic_cmd) {
      rep = run_generic(fdelta, tol, seed, steps);
    } else {
      rep = run_constants(common.precision);
    }
  } catch (const HReductionFailed& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::out_of_range& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  auto cfg = resolved_config(sub);
  cfg.insert(cfg.end(), rep.config.begin(), rep.config.end());
  rep.config = std::move(cfg);
  try {
    emit(common, rep);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}
