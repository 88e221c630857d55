#include "hforms/hurwitz.hpp"

#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace hforms {

namespace {

Integer nearest(const BigRational& x) { return surd_nearest_integer(QuadraticSurd(x)); }

void check_pair(const Integer& a, const Integer* next, std::size_t j, ValidityReport& report) {
  const Integer mag = abs(a);
  if (mag < 2) report.violations.push_back({j, 1});
  if (mag == 2 && next != nullptr && sgn(a) * sgn(*next) >= 0) report.violations.push_back({j, 2});
}

}  // namespace

DigitSequence expand(const QuadraticSurd& x, std::size_t n) {
  if (n == 0) throw std::invalid_argument("expand needs n >= 1");
  if (x.is_rational()) throw TerminatingExpansion();

  DigitSequence out;
  out.source = x.to_literal();
  out.digits.reserve(n);
  std::unordered_map<QuadraticSurd, std::size_t> seen;
  QuadraticSurd state = x;
  for (std::size_t k = 0; k <= n; ++k) {
    const auto [it, fresh] = seen.emplace(state, k);
    if (!fresh) {
      out.period = Period{it->second, k - it->second};
      break;
    }
    if (k == n) break;
    const Integer a = surd_nearest_integer(state);
    out.digits.push_back(a);
    state = (QuadraticSurd(a) - state).reciprocal();
  }
  if (out.period) out.digits = unroll(out, n);
  return out;
}

DigitSequence expand_certified(const CertifiedReal& x, std::size_t n, Precision cap) {
  if (n == 0) throw std::invalid_argument("expand needs n >= 1");
  DigitSequence out;
  // x_k = N(x) with N = [[A, B], [C, D]] of determinant 1; evaluated as
  // A/C - 1/(C (C x + D)) so that x occurs once in the interval expression.
  Integer A = 1, B = 0, C = 0, D = 1;
  while (out.digits.size() < n) {
    std::optional<Integer> digit;
    bool exact_integer = false;
    for (Precision prec = kDefaultPrecision;; prec = std::min<Precision>(prec * 2, cap)) {
      const Interval xb = x.bracket(prec);
      const Precision work = xb.precision();
      Interval xk;
      if (C == 0) {
        xk = (Interval::from_integer(A, work) * xb + Interval::from_integer(B, work)) / Interval::from_integer(D, work);
      } else {
        const Interval den = Interval::from_integer(C, work) * xb + Interval::from_integer(D, work);
        if (!den.sign().has_value() || *den.sign() == 0) {
          if (prec >= cap) break;
          continue;
        }
        xk = Interval::from_rational(make_rational(A, C), work) - Interval::from_integer(1, work) / (Interval::from_integer(C, work) * den);
      }
      const BigRational lo = xk.lower().to_rational(), hi = xk.upper().to_rational();
      const Integer nlo = nearest(lo), nhi = nearest(hi);
      if (nlo == nhi) {
        digit = nlo;
        exact_integer = lo == hi && lo == BigRational(nlo);
        break;
      }
      if (prec >= cap) break;
    }
    if (!digit) {
      out.precision_exhausted = true;
      break;
    }
    if (exact_integer) throw TerminatingExpansion();
    out.digits.push_back(*digit);
    // x_{k+1} = 1/(a - x_k): N <- [[0, 1], [-1, a]] N.
    const Integer a = *digit;
    Integer nA = C, nB = D, nC = -A + a * C, nD = -B + a * D;
    A = std::move(nA);
    B = std::move(nB);
    C = std::move(nC);
    D = std::move(nD);
  }
  return out;
}

ValidityReport validate(const std::vector<Integer>& digits) {
  ValidityReport report;
  for (std::size_t j = 1; j < digits.size(); ++j) {
    check_pair(digits[j], j + 1 < digits.size() ? &digits[j + 1] : nullptr, j, report);
  }
  return report;
}

ValidityReport validate(const DigitSequence& digits) {
  if (!digits.period) return validate(digits.digits);
  // A known period lets the last digit be checked against its successor too.
  return validate(unroll(digits, digits.size() + 1));
}

ValidityReport validate_cyclic(const std::vector<Integer>& block) {
  ValidityReport report;
  for (std::size_t j = 0; j < block.size(); ++j) check_pair(block[j], &block[(j + 1) % block.size()], j, report);
  return report;
}

BigRational evaluate(const std::vector<Integer>& digits) {
  if (digits.empty()) throw std::invalid_argument("evaluate needs at least one digit");
  BigRational value(digits.back());
  for (std::size_t k = digits.size() - 1; k-- > 0;) {
    if (value == 0) throw std::domain_error("division by zero in continued fraction tail");
    value = BigRational(digits[k]) - 1 / value;
    value.canonicalize();
  }
  return value;
}

GaussStep gauss_step(const QuadraticSurd& x) {
  if (x.is_zero()) throw std::domain_error("gauss_step at 0");
  const QuadraticSurd half(BigRational(1, 2));
  if (compare(x.abs(), half) > 0) throw std::domain_error("gauss_step needs |x| <= 1/2");
  const QuadraticSurd y = -x.reciprocal();
  Integer a = surd_nearest_integer(y);
  QuadraticSurd next = y - QuadraticSurd(a);
  return {std::move(a), std::move(next)};
}

UnimodularMatrix digit_matrix(const Integer& a) { return {a, -1, 1, 0}; }

UnimodularMatrix block_matrix(const std::vector<Integer>& block) {
  UnimodularMatrix m;
  for (const Integer& a : block) m = m * digit_matrix(a);
  return m;
}

QuadraticSurd periodic_value(const std::vector<Integer>& block) {
  if (block.empty()) throw std::invalid_argument("empty period block");
  if (!validate_cyclic(block).valid()) throw std::invalid_argument("period block violates the digit conditions");
  const UnimodularMatrix word = block_matrix(block);
  const IntMatrix2& m = word.entries();
  const Integer trace = m.a + m.d;
  if (abs(trace) <= 2 || m.c == 0) throw std::domain_error("period word is not hyperbolic");
  // Fixed points solve c x^2 + (d - a) x - b = 0; the value is the attracting one, |c x + d| > 1.
  const Integer disc = trace * trace - 4;
  const QuadraticSurd root = QuadraticSurd::sqrt(disc);
  const QuadraticSurd base(make_rational(m.a - m.d, 2 * m.c));
  const QuadraticSurd offset = root / QuadraticSurd(Integer(2 * m.c));
  for (const QuadraticSurd& x : {base + offset, base - offset}) {
    const QuadraticSurd slope = QuadraticSurd(m.c) * x + QuadraticSurd(m.d);
    if (compare(slope.abs(), QuadraticSurd(1)) > 0) return x;
  }
  throw std::logic_error("hyperbolic word without an attracting fixed point");
}

std::vector<Integer> unroll(const DigitSequence& seq, std::size_t n) {
  std::vector<Integer> out(seq.digits.begin(), seq.digits.begin() + std::min(n, seq.digits.size()));
  if (out.size() >= n) return out;
  if (!seq.period || seq.period->length == 0) throw std::invalid_argument("cannot extend an aperiodic digit sequence");
  const std::size_t start = seq.period->start, len = seq.period->length;
  while (out.size() < n) out.push_back(out[start + (out.size() - start) % len]);
  return out;
}

std::string to_json(const DigitSequence& seq) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Integer& a : seq.digits) {
    if (a.fits_slong_p()) arr.push_back(a.get_si());
    else arr.push_back(a.get_str());
  }
  j["digits"] = std::move(arr);
  if (seq.period) j["period"] = {seq.period->start, seq.period->length};
  if (!seq.source.empty()) j["source"] = seq.source;
  if (seq.precision_exhausted) j["precision_exhausted"] = true;
  return j.dump();
}

DigitSequence digits_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  DigitSequence seq;
  for (const auto& a : j.at("digits")) {
    seq.digits.push_back(a.is_string() ? Integer(a.get<std::string>()) : Integer(a.get<long>()));
  }
  if (j.contains("period")) {
    const auto& p = j.at("period");
    seq.period = Period{p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>()};
  }
  if (j.contains("source")) seq.source = j.at("source").get<std::string>();
  seq.precision_exhausted = j.value("precision_exhausted", false);
  return seq;
}

}  // namespace hforms
