#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <vector>

#include "gcl/exact_arith.hpp"

namespace gcl {

struct InternalMismatch : Error {
  using Error::Error;
};

inline constexpr std::size_t kDefaultBernoulliCap = 2000;

/// Exact Bernoulli numbers B_0..B_cap (B_1 = -1/2), grown on demand from
/// sum_{j=0}^{n} C(n+1, j) B_j = 0. Lookups are safe from many threads.
class BernoulliTable {
 public:
  explicit BernoulliTable(std::size_t cap = kDefaultBernoulliCap);

  std::size_t cap() const { return cap_; }
  std::size_t computed() const;

  /// Throws CapExceeded when n > cap().
  Rational at(std::size_t n) const;

 private:
  void extend_to(std::size_t n) const;

  std::size_t cap_;
  mutable std::mutex mutex_;
  mutable std::vector<Rational> values_;
};

/// Process-wide table with the default cap.
const BernoulliTable& default_bernoulli_table();

Rational bernoulli_exact(std::size_t n);

/// Product of the primes q with (q - 1) | n, for even n >= 2.
Integer von_staudt_clausen_denominator(std::size_t n);

enum class BernoulliSource { Exact, Harmonic };

const char* to_string(BernoulliSource s);

struct BernoulliResidue {
  Residue residue;                // B_{p-3} mod p
  BernoulliSource source;         // Exact when both routes ran and agreed
  std::optional<Rational> exact;  // B_{p-3} itself when within the table cap
};

/// (-1/2) * sum_{k=1}^{(p-1)/2} k^{-3} mod p.
Residue b_pm3_harmonic(std::uint64_t p);

/// B_{p-3} mod p. Below the table cap both the exact value and the
/// half-range cubic sum are computed and must agree (InternalMismatch).
BernoulliResidue b_pm3_mod_p(std::uint64_t p, const BernoulliTable& table = default_bernoulli_table());

}  // namespace gcl
