#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gcl/bernoulli.hpp"
#include "gcl/exact_arith.hpp"
#include "gcl/sequences.hpp"

namespace gcl {

enum class CongruenceMode { Gauss3, Theorem1 };

const char* to_string(CongruenceMode mode);

struct CongruenceTask {
  std::uint64_t p;
  unsigned n;
  unsigned m;
  OssParams rst;
  CongruenceMode mode = CongruenceMode::Theorem1;
};

struct CongruenceReport {
  CongruenceTask task;
  Integer a_high;  // A_{n p^m}
  Integer a_low;   // A_{n p^{m-1}}
  std::optional<Rational> correction{};        // Theorem1 only
  std::optional<BernoulliResidue> bernoulli{}; // Theorem1 only
  long required_exponent = 0;                  // 3m or 3m+1
  Valuation achieved_exponent = 0;
  bool pass = false;
};

/// The m- and p-independent rational multiplying p^{3m} B_{p-3}, with
/// separate formulas for r = 2, r = 3 and r >= 4.
Rational correction_term(unsigned n, unsigned r, unsigned s, unsigned t);

/// ord_p(A_{np^m} - A_{np^{m-1}}) >= 3m.
CongruenceReport verify_gauss3(const CongruenceTask& task, std::size_t cap = kDefaultMaxIndex);

/// ord_p(A_{np^m} - A_{np^{m-1}} - p^{3m} B_{p-3} correction) >= 3m + 1.
CongruenceReport verify_theorem1(const CongruenceTask& task, std::size_t cap = kDefaultMaxIndex);

/// verify_theorem1 with a caller-supplied correction term.
CongruenceReport verify_theorem1_with(const CongruenceTask& task, const Rational& correction,
                                      std::size_t cap = kDefaultMaxIndex);

/// Dispatches on task.mode.
CongruenceReport verify_congruence(const CongruenceTask& task, std::size_t cap = kDefaultMaxIndex);

enum class ConsistencyStatus { Agree, Disagree, Skipped, GaussFailure };

const char* to_string(ConsistencyStatus s);

struct ConsistencyEntry {
  std::uint64_t p;
  unsigned m;
  ConsistencyStatus status;
  std::optional<Residue> extracted;  // ((A_{np^m} - A_{np^{m-1}}) / p^{3m}) / B_{p-3} mod p
  std::optional<Residue> expected;   // correction mod p
  BernoulliSource bernoulli_source = BernoulliSource::Exact;
};

struct ConsistencyReport {
  unsigned n;
  OssParams rst;
  Rational correction;
  std::vector<ConsistencyEntry> entries;
  bool consistent = true;  // no Disagree or GaussFailure entries
};

ConsistencyReport consistency_sweep(unsigned n, const OssParams& rst, const std::vector<std::uint64_t>& primes,
                                    const std::vector<unsigned>& ms, std::size_t cap = kDefaultMaxIndex);

/// The nine default (r,s,t) rows: the six special cases plus (2,2,1), (3,1,1), (5,0,0).
std::vector<OssParams> default_rst_rows();
std::vector<std::uint64_t> default_primes();

/// p in {5,7,11,13} x n in {1,2} x m in {1,2} x the nine rows, in that nesting order.
std::vector<CongruenceTask> default_congruence_grid(CongruenceMode mode);

}  // namespace gcl
