#include "gcl/harmonic.hpp"

#include <vector>

namespace gcl {

namespace {

// Extra p-adic digits carried while summing; results are reduced afterwards.
constexpr int kGuardDigits = 2;

class TermwiseSum {
 public:
  TermwiseSum(std::uint64_t p, int exponent)
      : target_(p, exponent), work_(p, exponent + kGuardDigits), acc_(0) {}

  // acc += sign * factor / k^power
  void add(std::uint64_t k, unsigned power, int sign = 1, const Integer& factor = 1) {
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), k, power);
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), work_.value().get_mpz_t()) == 0) {
      throw DenominatorDivisibleByP("harmonic term 1/" + std::to_string(k) + " is not p-integral");
    }
    inv *= factor;
    if (sign < 0) acc_ -= inv; else acc_ += inv;
    mpz_fdiv_r(acc_.get_mpz_t(), acc_.get_mpz_t(), work_.value().get_mpz_t());
  }

  const PrimePowerModulus& work_modulus() const { return work_; }

  Residue result() const { return Residue(acc_, work_).reduce_to(target_.exponent()); }

 private:
  PrimePowerModulus target_;
  PrimePowerModulus work_;
  Integer acc_;
};

// Whether k, with {k / width} = rem, lies in the requested half.
bool in_half(std::uint64_t rem, std::uint64_t width, BlockHalf half) {
  return half == BlockHalf::Lower ? 2 * rem < width : 2 * rem > width;
}

template <class Fn>
void for_each_in_block(std::uint64_t n, std::uint64_t p, std::uint64_t width, BlockHalf half, Fn&& fn) {
  const std::uint64_t start = n * width;
  for (std::uint64_t rem = 1; rem < width; ++rem) {
    const std::uint64_t k = start + rem;
    if (k % p == 0 || !in_half(rem, width, half)) continue;
    fn(k);
  }
}

}  // namespace

const char* to_string(BlockHalf h) { return h == BlockHalf::Lower ? "lower" : "upper"; }
const char* to_string(NestedInner i) { return i == NestedInner::KOverPl ? "k" : "2k"; }

Residue primed_power_sum(const PrimedSumQuery& q) {
  if (q.power < 1) throw std::invalid_argument("primed_power_sum: power must be >= 1");
  TermwiseSum sum(q.p, q.exponent);
  for (std::uint64_t j = 1; j <= q.upper; ++j) {
    if (j % q.p != 0) sum.add(j, q.power);
  }
  return sum.result();
}

Residue half_range_power_sum(std::uint64_t p, unsigned m, unsigned power, int exponent) {
  return primed_power_sum({(ipow(p, m) - 1) / 2, power, p, exponent});
}

Residue block_inverse_square_sum(std::uint64_t n, std::uint64_t p, unsigned m, BlockHalf half,
                                 std::optional<int> exponent) {
  if (m < 1) throw std::invalid_argument("block_inverse_square_sum: m must be >= 1");
  TermwiseSum sum(p, exponent.value_or(static_cast<int>(m) + 1));
  for_each_in_block(n, p, ipow(p, m), half, [&](std::uint64_t k) { sum.add(k, 2); });
  return sum.result();
}

Residue block_cubic_sum(std::uint64_t n, std::uint64_t p, unsigned m, BlockHalf half, std::optional<int> exponent) {
  if (m < 1) throw std::invalid_argument("block_cubic_sum: m must be >= 1");
  TermwiseSum sum(p, exponent.value_or(1));
  for_each_in_block(n, p, ipow(p, m), half, [&](std::uint64_t k) { sum.add(k, 3); });
  return sum.result();
}

Residue nested_block_sum(std::uint64_t n, std::uint64_t p, unsigned l, NestedInner inner, BlockHalf half,
                         std::optional<int> exponent) {
  const std::uint64_t pl = ipow(p, l);
  const std::uint64_t width = pl * p;
  TermwiseSum sum(p, exponent.value_or(static_cast<int>(l) + 1));
  const Integer& mod = sum.work_modulus().value();

  // Prefix sums H'(j) = sum'_{i <= j} 1/i at the working modulus.
  const std::uint64_t max_top = (inner == NestedInner::KOverPl ? 1 : 2) * (n + 1) * width / pl;
  std::vector<Integer> prefix(max_top + 1, Integer(0));
  for (std::uint64_t j = 1; j <= max_top; ++j) {
    prefix[j] = prefix[j - 1];
    if (j % p == 0) continue;
    Integer inv;
    Integer jj(static_cast<unsigned long>(j));
    mpz_invert(inv.get_mpz_t(), jj.get_mpz_t(), mod.get_mpz_t());
    prefix[j] += inv;
    mpz_fdiv_r(prefix[j].get_mpz_t(), prefix[j].get_mpz_t(), mod.get_mpz_t());
  }

  for_each_in_block(n, p, width, half, [&](std::uint64_t k) {
    const std::uint64_t top = (inner == NestedInner::KOverPl ? k : 2 * k) / pl;
    sum.add(k, 2, 1, prefix[top]);
  });
  return sum.result();
}

Residue alternating_cubic_sum(std::uint64_t p, unsigned m, std::optional<int> exponent) {
  if (m < 1) throw std::invalid_argument("alternating_cubic_sum: m must be >= 1");
  TermwiseSum sum(p, exponent.value_or(1));
  const std::uint64_t upper = (ipow(p, m) - 1) / 2;
  for (std::uint64_t k = 1; k <= upper; ++k) {
    if (k % p != 0) sum.add(k, 3, k % 2 ? -1 : 1);
  }
  return sum.result();
}

}  // namespace gcl
