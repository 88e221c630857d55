#include "hforms/forms.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace hforms {

QuadraticSurd golden_lambda() { return {3, -1, 5, 2}; }

BinaryForm::BinaryForm(QuadraticSurd a, QuadraticSurd b, QuadraticSurd c, QuadraticSurd d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_ * d_ - b_ * c_ != QuadraticSurd(1)) throw std::domain_error("form coefficients need ad - bc = 1");
  u_ = d_.is_zero() ? BoundaryPoint::infinity() : BoundaryPoint(-c_ / d_);
  w_ = b_.is_zero() ? BoundaryPoint::infinity() : BoundaryPoint(-a_ / b_);
}

BinaryForm BinaryForm::from_matrix(const SurdMatrix2& g) { return {g.a, -g.c, -g.b, g.d}; }

SurdMatrix2 BinaryForm::g() const { return {a_, -c_, -b_, d_}; }

SurdMatrix2 BinaryForm::g_inverse() const { return {d_, c_, b_, a_}; }

BinaryForm BinaryForm::act(const UnimodularMatrix& gamma) const { return from_matrix(gamma.to_surd() * g()); }

std::string BinaryForm::to_literal() const {
  return "form(a=" + a_.to_literal() + ", b=" + b_.to_literal() + ", c=" + c_.to_literal() + ", d=" + d_.to_literal() +
         ")";
}

std::string BinaryForm::to_json() const {
  const SurdMatrix2 m = g();
  nlohmann::ordered_json j;
  j["form"] = to_literal();
  j["g"] = {{m.a.to_literal(), m.b.to_literal()}, {m.c.to_literal(), m.d.to_literal()}};
  j["u"] = u_.to_literal();
  j["w"] = w_.to_literal();
  return j.dump();
}

BinaryForm form_from_coefficients(const QuadraticSurd& a, const QuadraticSurd& b, const QuadraticSurd& c,
                                  const QuadraticSurd& d) {
  if (b.is_zero()) throw std::domain_error("form coefficient b must be nonzero");
  return BinaryForm::from_matrix({a, -c, -b, d});
}

BinaryForm form_from_endpoints(const QuadraticSurd& u, const QuadraticSurd& w) {
  if (u == w) throw std::domain_error("endpoints must differ");
  const QuadraticSurd inv = (w - u).reciprocal();
  return BinaryForm::from_matrix({w, u * inv, 1, inv});
}

BinaryForm identity_form() { return BinaryForm::from_matrix({1, 0, 0, 1}); }

FormValue evaluate_form(const BinaryForm& q, const Integer& x, const Integer& y) {
  const QuadraticSurd X(x), Y(y);
  QuadraticSurd lminus = q.d() * X + q.c() * Y;
  QuadraticSurd lplus = q.b() * X + q.a() * Y;
  QuadraticSurd value = lplus * lminus;
  return {std::move(value), std::move(lplus), std::move(lminus)};
}

bool is_h_reduced(const QuadraticSurd& u, const QuadraticSurd& w) {
  if (compare(w.abs(), QuadraticSurd(2)) <= 0) return false;
  const QuadraticSurd su = w.sign() < 0 ? -u : u;
  const QuadraticSurd lambda = golden_lambda();
  return compare(lambda - QuadraticSurd(1), su) <= 0 && compare(su, lambda) <= 0;
}

bool is_h_reduced(const BinaryForm& q) {
  if (q.u().is_infinite() || q.w().is_infinite()) return false;
  return is_h_reduced(q.u().value(), q.w().value());
}

HReductionFailed::HReductionFailed(UnimodularMatrix partial, std::vector<Integer> word)
    : std::runtime_error("H-reduction did not finish within the step limit"),
      partial_(std::move(partial)),
      word_(std::move(word)) {}

HReduction h_reduce(const BinaryForm& q, std::size_t max_steps) {
  if (q.w().is_infinite()) throw std::domain_error("h_reduce needs a finite attracting endpoint w");
  HReduction out{UnimodularMatrix::identity(), q, 0, {}};
  BoundaryPoint u = q.u();
  QuadraticSurd w = q.w().value();
  while (u.is_infinite() || !is_h_reduced(u.value(), w)) {
    if (out.steps >= max_steps) throw HReductionFailed(out.gamma, out.word);
    const Integer a = surd_nearest_integer(w);
    if (w == QuadraticSurd(a)) throw std::domain_error("reduction walk sent w to infinity (rational endpoint)");
    // z -> -1/(z - a) = [[0, -1], [1, -a]] z
    const UnimodularMatrix step(0, -1, 1, -a);
    out.gamma = step * out.gamma;
    u = surd_mobius(u, step);
    w = surd_mobius(w, step).value();
    out.word.push_back(a);
    ++out.steps;
  }
  if (out.steps > 0) out.reduced = q.act(out.gamma);
  return out;
}

std::array<CertifiedReal, 2> flow_image(const SurdMatrix2& g, const CertifiedReal& t,
                                        const std::array<CertifiedReal, 2>& v) {
  const CertifiedReal g11 = CertifiedReal::exact(g.a), g12 = CertifiedReal::exact(g.b);
  const CertifiedReal g21 = CertifiedReal::exact(g.c), g22 = CertifiedReal::exact(g.d);
  // g^{-1} = [[g22, -g12], [-g21, g11]] since det g = 1.
  const CertifiedReal X = g22 * v[0] - g12 * v[1];
  const CertifiedReal Y = g11 * v[1] - g21 * v[0];
  const CertifiedReal half_t = t / CertifiedReal(2);
  const CertifiedReal Xt = X * exp(half_t), Yt = Y * exp(-half_t);
  return {g11 * Xt + g12 * Yt, g21 * Xt + g22 * Yt};
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> parse_call(const std::string& text, const std::string& head) {
  const std::string s = trim(text);
  if (s.rfind(head + "(", 0) != 0 || s.back() != ')') throw std::invalid_argument("expected " + head + "(...)");
  const std::string inner = s.substr(head.size() + 1, s.size() - head.size() - 2);
  std::map<std::string, std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= inner.size(); ++i) {
    const char ch = i < inner.size() ? inner[i] : ',';
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      const std::string item = inner.substr(start, i - start);
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("expected key=value in " + head + "(...)");
      const std::string key = trim(item.substr(0, eq));
      if (!out.emplace(key, trim(item.substr(eq + 1))).second) throw std::invalid_argument("repeated key " + key);
      start = i + 1;
    }
  }
  return out;
}

const std::string& require_key(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw std::invalid_argument("missing key " + key);
  return it->second;
}

}  // namespace

BinaryForm parse_form(const std::string& text) {
  const std::string s = trim(text);
  if (s.rfind("endpoints(", 0) == 0) {
    const auto kv = parse_call(s, "endpoints");
    if (kv.size() != 2) throw std::invalid_argument("endpoints(...) takes exactly u and w");
    return form_from_endpoints(parse_surd(require_key(kv, "u")), parse_surd(require_key(kv, "w")));
  }
  const auto kv = parse_call(s, "form");
  if (kv.size() != 4) throw std::invalid_argument("form(...) takes exactly a, b, c, d");
  return form_from_coefficients(parse_surd(require_key(kv, "a")), parse_surd(require_key(kv, "b")),
                                parse_surd(require_key(kv, "c")), parse_surd(require_key(kv, "d")));
}

}  // namespace hforms
