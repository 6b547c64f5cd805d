#include <random>

#include "doctest.h"
#include "gcl/bernoulli.hpp"
#include "gcl/harmonic.hpp"

using namespace gcl;

namespace {

// Oracle: exact rational accumulation, reduced once at the end.
Rational rational_primed(std::uint64_t lo, std::uint64_t hi, unsigned d, std::uint64_t p) {
  Rational s = 0;
  for (std::uint64_t j = lo; j <= hi; ++j) {
    if (j % p == 0) continue;
    Integer den = 1;
    for (unsigned i = 0; i < d; ++i) den *= static_cast<unsigned long>(j);
    s += Rational(Integer(1), den);
  }
  return s;
}

bool in_half(std::uint64_t k, std::uint64_t width, BlockHalf half) {
  const std::uint64_t rem = k % width;
  return half == BlockHalf::Lower ? 2 * rem < width : 2 * rem > width;
}

Rational rational_block(std::uint64_t n, std::uint64_t p, unsigned m, BlockHalf half, unsigned d) {
  const std::uint64_t w = ipow(p, m);
  Rational s = 0;
  for (std::uint64_t k = std::max<std::uint64_t>(1, n * w); k < (n + 1) * w; ++k) {
    if (k % p == 0 || !in_half(k, w, half)) continue;
    Integer den = 1;
    for (unsigned i = 0; i < d; ++i) den *= static_cast<unsigned long>(k);
    s += Rational(Integer(1), den);
  }
  return s;
}

Rational rational_nested(std::uint64_t n, std::uint64_t p, unsigned l, NestedInner inner, BlockHalf half) {
  const std::uint64_t pl = ipow(p, l);
  const std::uint64_t w = pl * p;
  Rational s = 0;
  for (std::uint64_t k = std::max<std::uint64_t>(1, n * w); k < (n + 1) * w; ++k) {
    if (k % p == 0 || !in_half(k, w, half)) continue;
    const std::uint64_t top = (inner == NestedInner::KOverPl ? k : 2 * k) / pl;
    s += rational_primed(1, top, 1, p) / Rational(Integer(Integer(static_cast<unsigned long>(k)) * static_cast<unsigned long>(k)));
  }
  return s;
}

Rational bernoulli_pm3(std::uint64_t p) { return bernoulli_exact(p - 3); }

Rational p_power(std::uint64_t p, unsigned e) { return Rational(power_of(p, e)); }

}  // namespace

TEST_CASE("primed power sum examples") {
  for (std::uint64_t p : {5u, 7u, 11u, 13u}) {
    CHECK(primed_power_sum({p - 1, 1, p, 1}).is_zero());
  }
  CHECK(primed_power_sum({2, 2, 5, 2}) == reduce_mod(Rational(5, 4), PrimePowerModulus(5, 2)));
  // Full primed range below p^m, modulus p^{m+1}.
  CHECK(primed_power_sum({4, 2, 5, 2}) ==
        reduce_mod(Rational(2, 3) * Rational(5) * bernoulli_pm3(5), PrimePowerModulus(5, 2)));
  CHECK(primed_power_sum({24, 2, 5, 3}) ==
        reduce_mod(Rational(2, 3) * Rational(25) * bernoulli_pm3(5), PrimePowerModulus(5, 3)));
  // At modulus p^m the full range vanishes (inversion permutes the units).
  CHECK(primed_power_sum({24, 2, 5, 2}).is_zero());
  CHECK(primed_power_sum({0, 1, 5, 3}).is_zero());
}

TEST_CASE("primed power sum matches rational accumulation") {
  for (std::uint64_t p : {5u, 7u}) {
    for (unsigned d = 1; d <= 3; ++d) {
      for (std::uint64_t upper : {1u, 4u, 17u, 60u}) {
        CHECK(primed_power_sum({upper, d, p, 3}) == reduce_mod(rational_primed(1, upper, d, p), PrimePowerModulus(p, 3)));
      }
    }
  }
}

TEST_CASE("primed power sums depend only on the upper limit mod p") {
  std::mt19937_64 rng(5);
  for (std::uint64_t p : {5u, 7u, 11u}) {
    for (unsigned d = 1; d <= 3; ++d) {
      for (int i = 0; i < 40; ++i) {
        const std::uint64_t a = rng() % 1000;
        const std::uint64_t b = (a % p) + p * (rng() % (1000 / p));
        CHECK(primed_power_sum({a, d, p, 1}) == primed_power_sum({b, d, p, 1}));
      }
    }
  }
}

TEST_CASE("block sums: hand examples") {
  const auto lower = block_inverse_square_sum(0, 5, 1, BlockHalf::Lower);
  CHECK(lower.modulus() == PrimePowerModulus(5, 2));
  CHECK(lower == reduce_mod(Rational(5, 4), PrimePowerModulus(5, 2)));
  CHECK(rational_congruent(Rational(5, 4), Rational(7, 3) * Rational(5) * bernoulli_pm3(5), PrimePowerModulus(5, 2)));
  CHECK(block_inverse_square_sum(0, 5, 1, BlockHalf::Upper) ==
        reduce_mod(Rational(1, 9) + Rational(1, 16), PrimePowerModulus(5, 2)));
}

TEST_CASE("block sums match rational accumulation") {
  for (std::uint64_t p : {5u, 7u}) {
    for (unsigned m = 1; m <= 2; ++m) {
      for (std::uint64_t n : {0u, 1u, 3u}) {
        for (auto half : {BlockHalf::Lower, BlockHalf::Upper}) {
          const PrimePowerModulus mod(p, m + 1);
          CHECK(block_inverse_square_sum(n, p, m, half) == reduce_mod(rational_block(n, p, m, half, 2), mod));
          CHECK(block_cubic_sum(n, p, m, half, m + 1) == reduce_mod(rational_block(n, p, m, half, 3), mod));
        }
      }
    }
  }
}

TEST_CASE("two halves of each block partition the primed range") {
  for (std::uint64_t p : {5u, 7u, 11u}) {
    for (unsigned m = 1; m <= 2; ++m) {
      const std::uint64_t w = ipow(p, m);
      Residue total(0, PrimePowerModulus(p, m + 1));
      for (std::uint64_t n = 0; n < 3; ++n) {
        total = total + block_inverse_square_sum(n, p, m, BlockHalf::Lower) +
                block_inverse_square_sum(n, p, m, BlockHalf::Upper);
      }
      CHECK(total == primed_power_sum({3 * w - 1, 2, p, static_cast<int>(m) + 1}));
    }
  }
}

TEST_CASE("half-range and per-block sums against B_{p-3}") {
  for (std::uint64_t p : {5u, 7u, 11u, 13u, 17u}) {
    const Rational b = bernoulli_pm3(p);
    for (unsigned m = 1; m <= 2; ++m) {
      INFO("p=", p, " m=", m);
      const PrimePowerModulus hi(p, m + 1), lo(p, 1);
      CHECK(half_range_power_sum(p, m, 2, static_cast<int>(m) + 1) == reduce_mod(Rational(7, 3) * p_power(p, m) * b, hi));
      CHECK(half_range_power_sum(p, m, 3, 1) == reduce_mod(Rational(-2) * b, lo));
      for (std::uint64_t n : {0u, 1u, 2u}) {
        CHECK(block_cubic_sum(n, p, m, BlockHalf::Lower) == reduce_mod(Rational(-2) * b, lo));
        CHECK(block_cubic_sum(n, p, m, BlockHalf::Upper) == reduce_mod(Rational(2) * b, lo));
        CHECK(block_inverse_square_sum(n, p, m, BlockHalf::Lower) ==
              reduce_mod(Rational(12 * static_cast<long>(n) + 7, 3) * p_power(p, m) * b, hi));
        CHECK(block_inverse_square_sum(n, p, m, BlockHalf::Upper) ==
              reduce_mod(Rational(-(12 * static_cast<long>(n) + 5), 3) * p_power(p, m) * b, hi));
      }
    }
  }
}

TEST_CASE("nested block sums") {
  // l = 0, n = 0, inner k, lower half: k in {1, 2}.
  const Rational direct = Rational(1) + (Rational(1) + Rational(1, 2)) / Rational(4);
  CHECK(nested_block_sum(0, 5, 0, NestedInner::KOverPl, BlockHalf::Lower) == reduce_mod(direct, PrimePowerModulus(5, 1)));
  CHECK(reduce_mod(direct, PrimePowerModulus(5, 1)) == reduce_mod(Rational(1, 3) * bernoulli_pm3(5), PrimePowerModulus(5, 1)));
  CHECK(nested_block_sum(0, 7, 1, NestedInner::TwoKOverPl, BlockHalf::Upper) ==
        reduce_mod(Rational(4, 3) * Rational(7) * bernoulli_pm3(7), PrimePowerModulus(7, 2)));

  for (std::uint64_t p : {5u, 7u}) {
    for (unsigned l = 0; l <= 1; ++l) {
      for (std::uint64_t n : {0u, 2u}) {
        for (auto inner : {NestedInner::KOverPl, NestedInner::TwoKOverPl}) {
          for (auto half : {BlockHalf::Lower, BlockHalf::Upper}) {
            CHECK(nested_block_sum(n, p, l, inner, half) ==
                  reduce_mod(rational_nested(n, p, l, inner, half), PrimePowerModulus(p, l + 1)));
          }
        }
      }
    }
  }
}

TEST_CASE("alternating cubic sum") {
  // -1 + 1/8 = -7/8 and -B_2/4 = -1/24 are both 1 mod 5.
  CHECK(alternating_cubic_sum(5, 1).value() == 1);
  CHECK(reduce_mod(Rational(-7, 8), PrimePowerModulus(5, 1)).value() == 1);
  CHECK(reduce_mod(Rational(-1, 4) * bernoulli_pm3(5), PrimePowerModulus(5, 1)).value() == 1);
  const Rational direct7 = Rational(-1) + Rational(1, 8) - Rational(1, 27);
  CHECK(alternating_cubic_sum(7, 1) == reduce_mod(direct7, PrimePowerModulus(7, 1)));
  for (std::uint64_t p : {5u, 7u, 11u, 13u}) {
    CHECK(alternating_cubic_sum(p, 2) == alternating_cubic_sum(p, 1));
    CHECK(alternating_cubic_sum(p, 1) == reduce_mod(Rational(-1, 4) * bernoulli_pm3(p), PrimePowerModulus(p, 1)));
  }
}
