#include <random>

#include "doctest.h"
#include "gcl/exact_arith.hpp"

using namespace gcl;

namespace {

// Independent oracle: strip factors of p by repeated division.
long naive_ord(Integer x, long p) {
  long v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

Rational random_rational(std::mt19937_64& rng, long p) {
  // Denominators kept prime to p so congruences are defined.
  long num = static_cast<long>(rng() % 20001) - 10000;
  long den = 1 + static_cast<long>(rng() % 500);
  while (den % p == 0) ++den;
  return Rational(num, den);
}

}  // namespace

TEST_CASE("Rational stays normalized") {
  Rational x(Integer(6), Integer(-4));
  CHECK(x.numerator() == -3);
  CHECK(x.denominator() == 2);
  CHECK(Rational(Integer(0), Integer(-7)) == Rational(0));
  CHECK(Rational(0).denominator() == 1);
  CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
}

TEST_CASE("ord_p examples") {
  CHECK(ord_p(Rational(250), 5) == Valuation(3));
  CHECK(ord_p(Rational(-25, 36), 5) == Valuation(2));
  CHECK(ord_p(Rational(1, 7), 7) == Valuation(-1));
  CHECK(ord_p(Rational(0), 5).is_infinite());
  CHECK(ord_p(Rational(0), 5) > Valuation(1000000));
  CHECK(ord_p(Integer(2), 2) == Valuation(1));
}

TEST_CASE("ord_p is additive over products") {
  std::mt19937_64 rng(7);
  for (long p : {5L, 7L, 11L}) {
    for (int i = 0; i < 200; ++i) {
      const Rational x(Integer(static_cast<long>(rng() % 100000) + 1) * Integer(p * p),
                       Integer(static_cast<long>(rng() % 997) + 1));
      const Rational y(Integer(static_cast<long>(rng() % 3000) + 1), Integer(static_cast<long>(rng() % 50) + 1) * p);
      CHECK(ord_p(x * y, p) == ord_p(x, p) + ord_p(y, p));
      CHECK(ord_p(x, p).value() == naive_ord(x.numerator(), p) - naive_ord(x.denominator(), p));
    }
  }
}

TEST_CASE("rational_congruent examples") {
  const PrimePowerModulus m25(5, 2);
  CHECK(rational_congruent(Rational(5, 4), Rational(35, 18), m25));
  CHECK(rational_congruent(Rational(17, 3), Rational(17, 3), PrimePowerModulus(13, 9)));
  CHECK_FALSE(rational_congruent(Rational(1), Rational(2), PrimePowerModulus(5, 1)));
  CHECK_THROWS_AS(rational_congruent(Rational(1, 5), Rational(1), m25), DenominatorDivisibleByP);
}

TEST_CASE("rational_congruent is an equivalence relation") {
  std::mt19937_64 rng(11);
  const PrimePowerModulus mod(7, 1);
  for (int i = 0; i < 500; ++i) {
    const Rational x = random_rational(rng, 7);
    const Rational y = random_rational(rng, 7);
    const Rational z = random_rational(rng, 7);
    CHECK(rational_congruent(x, x, mod));
    CHECK(rational_congruent(x, y, mod) == rational_congruent(y, x, mod));
    if (rational_congruent(x, y, mod) && rational_congruent(y, z, mod)) CHECK(rational_congruent(x, z, mod));
    // Shift by a multiple of 7 to exercise the true branch.
    const Rational w = x + Rational(7) * Rational(static_cast<long>(rng() % 100));
    CHECK(rational_congruent(x, w, mod));
    CHECK(rational_congruent(w, x, mod));
  }
}

TEST_CASE("reduce_mod examples and additivity") {
  CHECK(reduce_mod(Rational(1, 6), PrimePowerModulus(5, 1)).value() == 1);
  CHECK(reduce_mod(Rational(0), PrimePowerModulus(11, 3)).value() == 0);
  CHECK(reduce_mod(Rational(-14, 3), PrimePowerModulus(5, 1)).value() == 2);
  CHECK_THROWS_AS(reduce_mod(Rational(1, 10), PrimePowerModulus(5, 1)), DenominatorDivisibleByP);

  std::mt19937_64 rng(3);
  const PrimePowerModulus mod(11, 3);
  for (int i = 0; i < 300; ++i) {
    const Rational x = random_rational(rng, 11);
    const Rational y = random_rational(rng, 11);
    CHECK(reduce_mod(x + y, mod) == reduce_mod(x, mod) + reduce_mod(y, mod));
    CHECK(reduce_mod(x * y, mod) == reduce_mod(x, mod) * reduce_mod(y, mod));
    CHECK(rational_congruent(x, Rational(reduce_mod(x, mod).value()), mod));
  }
}

TEST_CASE("residues refuse to mix moduli") {
  const Residue a(3, PrimePowerModulus(5, 2));
  const Residue b(3, PrimePowerModulus(5, 3));
  const Residue c(3, PrimePowerModulus(7, 2));
  CHECK_THROWS_AS(a + b, ModulusMismatch);
  CHECK_THROWS_AS(a * c, ModulusMismatch);
  CHECK_THROWS_AS((void)(a == b), ModulusMismatch);
  CHECK(a.reduce_to(1) == Residue(3, PrimePowerModulus(5, 1)));
  CHECK_THROWS_AS(a.reduce_to(3), ModulusMismatch);
  CHECK(Residue(-1, PrimePowerModulus(5, 2)).value() == 24);
  CHECK(Residue(10, PrimePowerModulus(5, 2)).valuation() == Valuation(1));
  CHECK(Residue(0, PrimePowerModulus(5, 2)).valuation() == Valuation(2));
  CHECK_THROWS_AS(Residue(10, PrimePowerModulus(5, 2)).inverse(), DenominatorDivisibleByP);
  CHECK((Residue(7, PrimePowerModulus(5, 2)) * Residue(7, PrimePowerModulus(5, 2)).inverse()).value() == 1);
}

TEST_CASE("prime power moduli") {
  CHECK_THROWS_AS(PrimePowerModulus(3, 1), NotPrime);
  CHECK_THROWS_AS(PrimePowerModulus(9, 1), NotPrime);
  CHECK_THROWS_AS(PrimePowerModulus(5, 0), std::invalid_argument);
  CHECK(PrimePowerModulus(13, 3).value() == 2197);
  CHECK(PrimePowerModulus(13, 3).to_string() == "13^3");
}

TEST_CASE("deterministic primality agrees with trial division below 10^5") {
  auto trial = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  };
  for (std::uint64_t n = 0; n < 100000; ++n) REQUIRE(is_prime(n) == trial(n));
  CHECK(is_prime(999983));
  CHECK_FALSE(is_prime(999981));
  CHECK(is_prime(18446744073709551557ULL));
}

TEST_CASE("floor split") {
  auto s = floor_div_and_remainder(13, 5, 1);
  CHECK(s.quotient == 2);
  CHECK(s.remainder == 3);
  s = floor_div_and_remainder(25, 5, 2);
  CHECK(s.quotient == 1);
  CHECK(s.remainder == 0);
  s = floor_div_and_remainder(7, 5, 0);
  CHECK(s.quotient == 7);
  CHECK(s.remainder == 0);
  CHECK_THROWS_AS(ipow(13, 40), CapExceeded);
}

TEST_CASE("floor of 2k splits on the half-block remainder") {
  for (std::uint64_t p : {5u, 7u}) {
    for (unsigned m : {1u, 2u}) {
      const std::uint64_t pm = ipow(p, m);
      for (std::uint64_t k = 0; k < 10000; ++k) {
        const auto split = floor_div_and_remainder(k, p, m);
        REQUIRE(2 * split.remainder != pm);
        const std::uint64_t expected = 2 * split.quotient + (2 * split.remainder < pm ? 0 : 1);
        REQUIRE(floor_div_and_remainder(2 * k, p, m).quotient == expected);
      }
    }
  }
}
