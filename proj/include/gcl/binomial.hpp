#pragma once

#include <cstdint>

#include "gcl/exact_arith.hpp"

namespace gcl {

// Binomial coefficient with the combinatorial convention: zero whenever
// bottom < 0, top < 0, or bottom > top.
Integer binom(long top, long bottom);

// x^t with x^0 = 1 for every x, including 0.
Integer pow_conv(const Integer& x, unsigned long t);

// C(n,k)^r * C(n+k,k)^s * C(2k,n)^t
Integer summand(long n, long k, unsigned r, unsigned s, unsigned t);

/// Walks C(n, 0), C(n, 1), ..., C(n, n) by the multiplicative recurrence.
class BinomialRow {
 public:
  explicit BinomialRow(std::uint64_t n) : n_(n) {}

  std::uint64_t top() const { return n_; }
  std::uint64_t bottom() const { return k_; }
  const Integer& value() const { return value_; }
  bool done() const { return k_ > n_; }

  void advance();

 private:
  std::uint64_t n_;
  std::uint64_t k_ = 0;
  Integer value_ = 1;
};

/// Walks C(base + k, k) for k = 0, 1, 2, ...
class CentralShiftRow {
 public:
  explicit CentralShiftRow(std::uint64_t base) : base_(base) {}

  std::uint64_t bottom() const { return k_; }
  const Integer& value() const { return value_; }

  void advance();

 private:
  std::uint64_t base_;
  std::uint64_t k_ = 0;
  Integer value_ = 1;
};

}  // namespace gcl
