#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>

namespace hforms {

using Integer = mpz_class;
using BigRational = mpq_class;

Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n);

/// n = root^2 * squarefree, with squarefree free of square factors.
///
/// Trial division runs while i^3 <= remaining cofactor (capped at 2e6); the
/// leftover then has at most two prime factors and is tested for being a square.
/// Beyond the cap (cofactors above ~8e18) a product of two distinct large
/// primes and a prime times a square of a larger prime can no longer be told
/// apart, so very large radicands may keep a hidden square factor.
struct SquareSplit {
  Integer root;
  Integer squarefree;
};
SquareSplit split_square_factor(const Integer& n);

int sgn(const Integer& n);
Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);
Integer floor(const BigRational& x);
/// n / d in lowest terms; d != 0.
BigRational make_rational(const Integer& n, const Integer& d);

std::size_t hash_value(const Integer& n);

/// Exact rational from a decimal or fraction string: "3", "-0.25", "7/4", "1e-3".
BigRational parse_rational(const std::string& text);

/// Exact value of a finite double.
BigRational rational_from_double(double x);

std::string to_string(const Integer& n);
std::string to_string(const BigRational& x);

}  // namespace hforms
