#include <mpfr.h>

#include <cmath>

#include "doctest.h"
#include "generators.hpp"
#include "hforms/numerics/certified.hpp"
#include "hforms/numerics/integer.hpp"
#include "hforms/numerics/interval.hpp"
#include "hforms/numerics/matrix.hpp"
#include "hforms/numerics/surd.hpp"

using namespace hforms;
using hforms::testing::Rng;

namespace {

QuadraticSurd S(long p, long q, long d, long r) { return QuadraticSurd(Integer(p), Integer(q), Integer(d), Integer(r)); }

// Independent oracle: evaluate (p + q sqrt d) / r with MPFR at 512 bits.
int mpfr_sign_oracle(const QuadraticSurd& x, bool& decided) {
  mpfr_t s, t;
  mpfr_inits2(512, s, t, nullptr);
  mpfr_set_z(s, x.d().get_mpz_t(), MPFR_RNDN);
  mpfr_sqrt(s, s, MPFR_RNDN);
  mpfr_mul_z(s, s, x.q().get_mpz_t(), MPFR_RNDN);
  mpfr_add_z(s, s, x.p().get_mpz_t(), MPFR_RNDN);
  mpfr_set_d(t, 1e-140, MPFR_RNDN);
  mpfr_abs(t, s, MPFR_RNDN);
  decided = mpfr_cmp_d(t, 1e-100) > 0;
  const int sign = mpfr_sgn(s);
  mpfr_clears(s, t, nullptr);
  return sign > 0 ? 1 : (sign < 0 ? -1 : 0);
}

}  // namespace

TEST_CASE("integer helpers") {
  CHECK(isqrt(Integer(99)) == 9);
  CHECK(is_perfect_square(Integer(144)));
  CHECK_FALSE(is_perfect_square(Integer(-4)));
  const auto split = split_square_factor(Integer(72));
  CHECK(split.root == 6);
  CHECK(split.squarefree == 2);
  CHECK(floor_div(Integer(-7), Integer(2)) == -4);
  CHECK(ceil_div(Integer(-7), Integer(2)) == -3);
  CHECK(parse_rational("-0.25") == BigRational(-1, 4));
  CHECK(parse_rational("7/14") == BigRational(1, 2));
  CHECK(parse_rational("1e-3") == BigRational(1, 1000));
  CHECK(parse_rational("2.5e2") == BigRational(250));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("surd canonical form") {
  const QuadraticSurd x = S(2, 2, 8, 4);  // (2 + 2 sqrt 8)/4 = (1 + 2 sqrt 2)/2
  CHECK(x.p() == 1);
  CHECK(x.q() == 2);
  CHECK(x.d() == 2);
  CHECK(x.r() == 2);
  CHECK(S(3, 2, 9, 3) == QuadraticSurd(3));
  CHECK(S(0, 0, 0, 5).is_zero());
  CHECK(S(1, 1, 5, -2) == S(-1, -1, 5, 2));
  CHECK_THROWS(S(1, 1, 5, 0));
}

TEST_CASE("surd_sign examples") {
  CHECK(surd_sign(S(3, -1, 5, 2)) == 1);
  CHECK(surd_sign(S(0, 0, 2, 1)) == 0);
  CHECK(surd_sign(S(2, -1, 5, 1)) == -1);
}

TEST_CASE("surd_nearest_integer examples") {
  CHECK(surd_nearest_integer(S(3, 1, 5, 2)) == 3);
  CHECK(surd_nearest_integer(S(1, 1, 2, 1)) == 2);
  CHECK(surd_nearest_integer(QuadraticSurd(BigRational(5, 2))) == 3);
  CHECK(surd_nearest_integer(QuadraticSurd(BigRational(-5, 2))) == -3);
  CHECK(surd_nearest_integer(S(-3, -1, 5, 2)) == -3);
}

TEST_CASE("surd arithmetic and floor") {
  const QuadraticSurd phi = S(1, 1, 5, 2);
  CHECK(phi * phi == phi + 1);
  CHECK(phi.reciprocal() == phi - 1);
  CHECK(phi.conjugate() == S(1, -1, 5, 2));
  CHECK((phi / phi) == QuadraticSurd(1));
  CHECK(phi.floor() == 1);
  CHECK((-phi).floor() == -2);
  CHECK((-phi).ceil() == -1);
  CHECK_THROWS_AS(phi + QuadraticSurd::sqrt(2), std::domain_error);
  CHECK(compare(QuadraticSurd::sqrt(2), S(0, 1, 3, 1)) < 0);
  CHECK(compare(S(7, 0, 0, 5), QuadraticSurd::sqrt(2)) < 0);  // 1.4 < 1.41421
  CHECK(compare(S(3, -1, 5, 2), S(-1, 1, 2, 1)) < 0);         // 0.381966 < 0.414214
}

TEST_CASE("surd literals round-trip") {
  const QuadraticSurd x = S(-3, 7, 11, 4);
  CHECK(parse_surd(x.to_literal()) == x);
  CHECK(parse_surd("rat(6,4)") == QuadraticSurd(BigRational(3, 2)));
  CHECK(parse_surd("0.5") == QuadraticSurd(BigRational(1, 2)));
  CHECK(parse_point("inf").is_infinite());
  CHECK_THROWS(parse_surd("inf"));
  CHECK_THROWS(parse_surd("surd(1,2,3)"));
}

TEST_CASE("surd_mobius examples") {
  const IntMatrix2 m{0, -1, 1, -1};
  CHECK(surd_mobius(QuadraticSurd::sqrt(2), m).value() == S(-1, -1, 2, 1));
  // g = [[a,-c],[-b,d]] sends infinity to -a/b.
  const IntMatrix2 g{3, -1, -2, 1};
  CHECK(surd_mobius(BoundaryPoint::infinity(), g).value() == QuadraticSurd(BigRational(-3, 2)));
  CHECK(surd_mobius(QuadraticSurd(0), UnimodularMatrix::identity()).value() == QuadraticSurd(0));
  CHECK(surd_mobius(QuadraticSurd(1), m).is_infinite());
  CHECK(surd_mobius(BoundaryPoint::infinity(), IntMatrix2{1, 0, 0, 1}).is_infinite());
  CHECK_THROWS(surd_mobius(QuadraticSurd(1), IntMatrix2{2, 0, 0, 1}));
}

TEST_CASE("property: mobius round-trip is exact") {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const QuadraticSurd x = hforms::testing::random_surd(rng);
    const UnimodularMatrix m = hforms::testing::random_unimodular(rng);
    const BoundaryPoint y = surd_mobius(x, m);
    REQUIRE(surd_mobius(y, m.inverse()).value() == x);
  }
}

TEST_CASE("property: surd_sign agrees with high-precision evaluation") {
  Rng rng(5);
  int decided_count = 0;
  for (int i = 0; i < 10000; ++i) {
    // Near-cancelling coefficients make the sign nontrivial.
    const long d = hforms::testing::random_nonsquare(rng, 2, 100000);
    const long q = hforms::testing::uniform(rng, -1000, 1000);
    const long approx = std::lround(q * std::sqrt(double(d)));
    const long p = -approx + hforms::testing::uniform(rng, -2, 2);
    const QuadraticSurd x = S(p, q, d, hforms::testing::uniform(rng, 1, 9));
    bool decided = false;
    const int oracle = mpfr_sign_oracle(x, decided);
    if (!decided) continue;
    ++decided_count;
    REQUIRE(surd_sign(x) == oracle);
  }
  CHECK(decided_count > 9000);
}

TEST_CASE("property: floor and nearest integer match the value") {
  Rng rng(9);
  for (int i = 0; i < 3000; ++i) {
    const QuadraticSurd x = hforms::testing::random_surd(rng, 1000, 1000);
    const Integer f = x.floor();
    REQUIRE(compare(QuadraticSurd(f), x) <= 0);
    REQUIRE(compare(x, QuadraticSurd(Integer(f + 1))) < 0);
    const Integer n = surd_nearest_integer(x);
    const QuadraticSurd dist = (x - QuadraticSurd(n)).abs();
    REQUIRE(compare(dist, QuadraticSurd(BigRational(1, 2))) <= 0);
  }
}

TEST_CASE("interval basics") {
  const Interval two = Interval::from_integer(2, 128);
  const Interval r2 = sqrt(two);
  CHECK(r2.contains(BigRational(14142135623, 10000000000)) == false);
  CHECK(r2.lower_double() <= std::sqrt(2.0));
  CHECK(r2.upper_double() >= std::sqrt(2.0));
  CHECK(r2.width() < 1e-35);
  const Interval s5 = Interval::from_surd(QuadraticSurd::sqrt(5), 128);
  CHECK(s5.lower_double() <= std::sqrt(5.0));
  CHECK(s5.upper_double() >= std::sqrt(5.0));
  CHECK((two - two).sign() == 0);
  CHECK_FALSE((two - two).certainly_less(two - two));
  CHECK_THROWS(two / (two - two));
}

TEST_CASE("certified reals") {
  const CertifiedReal ln4 = log(CertifiedReal(4));
  const CertifiedReal two_ln2 = CertifiedReal(2) * log(CertifiedReal(2));
  const Interval diff = (ln4 - two_ln2).refine_to_width(1e-60);
  CHECK(diff.contains(0));
  CHECK(certainly_less(log(CertifiedReal(3)), CertifiedReal::exact(BigRational(11, 10))));
  CHECK((CertifiedReal::exact(QuadraticSurd::sqrt(2)) - sqrt(CertifiedReal(2))).refine_to_width(1e-50).contains(0));
  CHECK(acosh(CertifiedReal(3)).refine_to_width(1e-30).contains(BigRational(1762747174, 1000000000)) == false);
  CHECK(std::abs(acosh(CertifiedReal(3)).approx() - std::log(3 + 2 * std::sqrt(2.0))) < 1e-15);
}

TEST_CASE("property: refinement never widens") {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const QuadraticSurd x = hforms::testing::random_surd(rng).abs() + 1;
    const CertifiedReal v = log(CertifiedReal::exact(x)) / sqrt(CertifiedReal::exact(x));
    BigRational lo = v.lower(), hi = v.upper();
    for (Precision prec : {64, 256, 96, 1024, 512}) {
      (void)v.bracket(prec);
      REQUIRE(v.lower() >= lo);
      REQUIRE(v.upper() <= hi);
      lo = v.lower();
      hi = v.upper();
    }
  }
}
