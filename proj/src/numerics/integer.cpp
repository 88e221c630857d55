#include "hforms/numerics/integer.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace hforms {

Integer isqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("isqrt of negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const Integer& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

SquareSplit split_square_factor(const Integer& n) {
  if (n < 0) throw std::domain_error("split_square_factor of negative integer");
  if (n == 0) return {Integer(0), Integer(0)};
  Integer rest = n;
  Integer root = 1;
  Integer free = 1;
  constexpr unsigned long kTrialCap = 2000000;
  for (unsigned long i = 2; i <= kTrialCap; i += (i == 2 ? 1 : 2)) {
    Integer cube = Integer(i) * i * i;
    if (cube > rest) break;
    unsigned exponent = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), i) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), i);
      ++exponent;
    }
    for (unsigned k = 0; k < exponent / 2; ++k) root *= i;
    if (exponent % 2 == 1) free *= i;
  }
  if (is_perfect_square(rest)) {
    root *= isqrt(rest);
  } else {
    free *= rest;
  }
  return {root, free};
}

int sgn(const Integer& n) { return mpz_sgn(n.get_mpz_t()); }

Integer floor_div(const Integer& a, const Integer& b) {
  if (b == 0) throw std::domain_error("division by zero");
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  if (b == 0) throw std::domain_error("division by zero");
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor(const BigRational& x) { return floor_div(x.get_num(), x.get_den()); }

std::size_t hash_value(const Integer& n) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(n.get_mpz_t()) + 1);
  const std::size_t limbs = mpz_size(n.get_mpz_t());
  for (std::size_t i = 0; i < limbs; ++i) {
    const auto limb = static_cast<std::size_t>(mpz_getlimbn(n.get_mpz_t(), static_cast<mp_size_t>(i)));
    h ^= std::hash<std::size_t>{}(limb) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

Integer parse_integer(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw std::invalid_argument("bad integer literal '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal '" + s + "'");
  }
  Integer z;
  z.set_str(s[0] == '+' ? s.substr(1) : s, 10);
  return z;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\n\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

BigRational parse_rational(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw std::invalid_argument("empty number literal");
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    Integer num = parse_integer(trim(text.substr(0, slash)));
    Integer den = parse_integer(trim(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    BigRational q(num, den);
    q.canonicalize();
    return q;
  }
  std::string mantissa = text;
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string::npos) {
    mantissa = text.substr(0, e);
    exponent = std::stol(text.substr(e + 1));
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa = mantissa.substr(1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (char ch : mantissa) {
    if (ch == '.') {
      if (seen_point) throw std::invalid_argument("bad number literal '" + text + "'");
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      if (seen_point) ++frac_digits;
    } else {
      throw std::invalid_argument("bad number literal '" + text + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad number literal '" + text + "'");
  Integer num(digits, 10);
  if (negative) num = -num;
  const long scale = exponent - frac_digits;
  Integer pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  BigRational q = scale >= 0 ? BigRational(num * pow10) : BigRational(num, pow10);
  q.canonicalize();
  return q;
}

BigRational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("non-finite double has no rational value");
  BigRational q;
  mpq_set_d(q.get_mpq_t(), x);
  return q;
}

std::string to_string(const Integer& n) { return n.get_str(10); }

std::string to_string(const BigRational& x) {
  if (x.get_den() == 1) return x.get_num().get_str(10);
  return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

BigRational make_rational(const Integer& n, const Integer& d) {
  if (d == 0) throw std::domain_error("zero denominator");
  BigRational q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace hforms
