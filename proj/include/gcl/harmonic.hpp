#pragma once

#include <cstdint>
#include <optional>

#include "gcl/exact_arith.hpp"

namespace gcl {

// Sums over k with floor(k/p^m) = n split by 2{k/p^m} < p^m (Lower) or > p^m (Upper).
enum class BlockHalf { Lower, Upper };

// Upper limit of the inner harmonic sum in the nested block sums.
enum class NestedInner { KOverPl, TwoKOverPl };

const char* to_string(BlockHalf h);
const char* to_string(NestedInner i);

/// sum_{j <= upper, p does not divide j} j^{-power} mod p^exponent.
struct PrimedSumQuery {
  std::uint64_t upper;
  unsigned power;
  std::uint64_t p;
  int exponent;
};

Residue primed_power_sum(const PrimedSumQuery& q);

/// sum' over 1 <= k <= (p^m - 1)/2 of k^{-power}, mod p^exponent.
Residue half_range_power_sum(std::uint64_t p, unsigned m, unsigned power, int exponent);

/// sum' 1/k^2 over one half of block n of width p^m. Defaults to mod p^{m+1}.
Residue block_inverse_square_sum(std::uint64_t n, std::uint64_t p, unsigned m, BlockHalf half,
                                 std::optional<int> exponent = std::nullopt);

/// sum' 1/k^3 over one half of block n of width p^m. Defaults to mod p.
Residue block_cubic_sum(std::uint64_t n, std::uint64_t p, unsigned m, BlockHalf half,
                        std::optional<int> exponent = std::nullopt);

/// sum' (1/k^2) * sum'_{j <= floor(k/p^l) or floor(2k/p^l)} 1/j over one half
/// of block n of width p^{l+1}. Defaults to mod p^{l+1}.
Residue nested_block_sum(std::uint64_t n, std::uint64_t p, unsigned l, NestedInner inner, BlockHalf half,
                         std::optional<int> exponent = std::nullopt);

/// sum'_{k=1}^{(p^m-1)/2} (-1)^k / k^3. Defaults to mod p.
Residue alternating_cubic_sum(std::uint64_t p, unsigned m, std::optional<int> exponent = std::nullopt);

}  // namespace gcl
