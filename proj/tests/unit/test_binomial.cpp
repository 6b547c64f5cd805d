#include "doctest.h"
#include "gcl/binomial.hpp"

using namespace gcl;

TEST_CASE("binom conventions") {
  CHECK(binom(4, 2) == 6);
  CHECK(binom(0, 1) == 0);
  CHECK(binom(0, 0) == 1);
  CHECK(binom(3, -1) == 0);
  CHECK(binom(-1, 0) == 0);
  CHECK(binom(-5, 3) == 0);
  CHECK(binom(5, 6) == 0);
}

TEST_CASE("Pascal and symmetry up to 200") {
  for (long n = 1; n <= 200; ++n) {
    for (long k = 0; k <= n; ++k) {
      REQUIRE(binom(n, k) == binom(n - 1, k) + binom(n - 1, k - 1));
      REQUIRE(binom(n, k) == binom(n, n - k));
    }
  }
}

TEST_CASE("pow_conv") {
  CHECK(pow_conv(0, 0) == 1);
  CHECK(pow_conv(0, 2) == 0);
  CHECK(pow_conv(-3, 3) == -27);
  CHECK(pow_conv(7, 0) == 1);
}

TEST_CASE("summand") {
  CHECK(summand(2, 1, 3, 0, 0) == 8);
  CHECK(summand(1, 0, 2, 1, 1) == 0);
  // A_2^{(2,2,0)} = 1 + 36 + 36
  Integer a2 = 0;
  for (long k = 0; k <= 2; ++k) a2 += summand(2, k, 2, 2, 0);
  CHECK(a2 == 73);
  // A_1^{(2,1,0)} = 1 + 2 needs C(0,1)^0 = 1.
  CHECK(summand(1, 0, 2, 1, 0) + summand(1, 1, 2, 1, 0) == 3);
  for (long n = 0; n <= 10; ++n) {
    for (long k = 0; k <= n; ++k) {
      CHECK(summand(n, k, 3, 1, 0) == pow_conv(binom(n, k), 3) * binom(n + k, k));
    }
  }
}

TEST_CASE("streaming rows match direct binomials") {
  for (std::uint64_t n : {0u, 1u, 7u, 64u, 301u}) {
    BinomialRow row(n);
    CentralShiftRow shift(n);
    for (std::uint64_t k = 0; k <= n; ++k, row.advance(), shift.advance()) {
      REQUIRE(row.value() == binom(static_cast<long>(n), static_cast<long>(k)));
      REQUIRE(shift.value() == binom(static_cast<long>(n + k), static_cast<long>(k)));
    }
    CHECK(row.done());
  }
}
