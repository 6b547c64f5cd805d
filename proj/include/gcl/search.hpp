#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcl/exact_arith.hpp"
#include "gcl/sequences.hpp"

namespace gcl {

struct BudgetExceeded : Error {
  using Error::Error;
};

enum class SearchFamily { Zagier, Cooper };

const char* to_string(SearchFamily f);

struct IntRange {
  long lo, hi;  // inclusive
  std::uint64_t size() const { return hi < lo ? 0 : static_cast<std::uint64_t>(hi - lo) + 1; }
};

/// Zagier ranges are (A, B, lambda); Cooper ranges are (a, b, c, d).
struct SearchBox {
  SearchFamily family;
  std::vector<IntRange> ranges;
  std::size_t horizon = 30;

  std::uint64_t candidates() const;
};

SearchBox default_zagier_box();  // A in [0,20], B in [-100,100], lambda in [0,10], horizon 50
SearchBox default_cooper_box();  // a in [0,20], b in [0,10], c in [-250,250], d in [-15,15], horizon 30

enum class ClassKind { KnownSporadic, Degenerate, Unclassified };

struct Classification {
  ClassKind kind = ClassKind::Unclassified;
  std::optional<NamedId> id;  // set for KnownSporadic

  friend bool operator==(const Classification&, const Classification&) = default;
};

std::string to_string(const Classification& c);

struct SearchHit {
  std::vector<long> params;
  std::vector<Integer> first_terms;  // u_0 .. u_{horizon-1}, all integral
  Classification classification;
};

struct SearchResult {
  std::vector<SearchHit> hits;  // lexicographic in params
  std::uint64_t candidates = 0;
  // Integrality up to the horizon is evidence, never a proof.
  bool evidence_only = true;
};

struct SearchOptions {
  std::uint64_t budget = 10'000'000;
  unsigned workers = 1;
};

/// Result of stepping one recurrence with early abandon.
struct IntegralityProbe {
  std::optional<std::size_t> abandoned_at;  // first index whose term is not an integer
  std::vector<Integer> terms;               // integral prefix
};

SequenceSpec spec_for(SearchFamily family, std::span<const long> params);

/// Steps the recurrence in checked 128-bit arithmetic, moving to GMP on
/// overflow, and stops at the first term whose division is not exact.
IntegralityProbe probe_integrality(SearchFamily family, std::span<const long> params, std::size_t horizon);

/// Matches the first ten terms against the named rows, then flags
/// eventually-zero and constant-ratio sequences as degenerate.
Classification classify(std::span<const Integer> terms);

/// Every tuple of the box whose solution stays integral through the horizon.
/// Throws BudgetExceeded when the box holds more than options.budget tuples.
SearchResult run_search(const SearchBox& box, const SearchOptions& options = {});

}  // namespace gcl
