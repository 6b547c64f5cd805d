#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "gcl/bernoulli.hpp"
#include "gcl/exact_arith.hpp"

namespace gcl {

struct DegenerateArgs : Error {
  using Error::Error;
};

enum class LemmaId {
  Granville_b1,
  Shift_b2,
  Block_b7,
  Block_b8,
  Full_b9,
  HalfCubic_b12,
  HalfSquare_b13,
  Nested_b14,
  Nested_b15,
  Nested_b16,
  Nested_b17,
  Alt_b23,
};

inline constexpr LemmaId kAllLemmas[] = {
    LemmaId::Granville_b1, LemmaId::Shift_b2,   LemmaId::Block_b7,   LemmaId::Block_b8,
    LemmaId::Full_b9,      LemmaId::HalfCubic_b12, LemmaId::HalfSquare_b13, LemmaId::Nested_b14,
    LemmaId::Nested_b15,   LemmaId::Nested_b16, LemmaId::Nested_b17, LemmaId::Alt_b23,
};

std::string_view to_string(LemmaId id);  // "b1", "b2", "b7", ...
std::optional<LemmaId> lemma_from_string(std::string_view s);

using LemmaValue = std::variant<Rational, Residue>;

std::string to_string(const LemmaValue& v);

struct LemmaReport {
  LemmaId id;
  std::vector<std::pair<std::string, long>> params;
  LemmaValue lhs;
  LemmaValue rhs;
  long required_exponent = 0;
  Valuation achieved_exponent = 0;
  // Precision the difference was computed at; achieved is capped here.
  Valuation precision_exponent = Valuation::infinity();
  BernoulliSource bernoulli_source = BernoulliSource::Exact;
  bool pass = false;
};

/// Added to the lemma's right-hand coefficient. Non-zero only for negative controls.
struct LemmaOptions {
  Rational rhs_shift = 0;
};

/// Parameters of one lemma instance; each lemma reads the fields it needs.
struct LemmaTask {
  LemmaId id;
  std::uint64_t p = 5;
  unsigned m = 1;  // b2, b7, b8, b9, b12, b13, b23
  unsigned l = 0;  // b14..b17
  unsigned n = 0;  // b1, b2, b7, b8, b14..b17
  unsigned k = 0;  // b1
  unsigned a = 0, b = 0, c = 0;  // b2
  unsigned r = 0, s = 0, t = 0;  // b2
};

/// C(np, kp) / C(n, k) against 1 - nk(n-k) p^3 B_{p-3} / 3, exact rationals.
/// Throws DegenerateArgs unless 1 <= k < n.
LemmaReport verify_granville(unsigned n, unsigned k, std::uint64_t p, const LemmaOptions& opts = {});

/// The binomial shift congruence mod p^{m+1}.
LemmaReport verify_binom_shift(unsigned a, unsigned b, unsigned c, unsigned n, unsigned m, std::uint64_t p,
                               unsigned r, unsigned s, unsigned t, const LemmaOptions& opts = {});

/// b7, b8, b9, b12, b13, b23 take m_or_l = m; b14..b17 take m_or_l = l.
LemmaReport verify_block_lemma(LemmaId which, std::uint64_t p, unsigned m_or_l, unsigned n,
                               const LemmaOptions& opts = {});

LemmaReport verify_lemma(const LemmaTask& task, const LemmaOptions& opts = {});

/// Default grid: p in {5,7,11,13}, m in {1,2}, l in {0,1,2}, n in {0,1,2};
/// b1 over 1 <= k < n <= 6, p in {5,7,11}; b2 with `random_b2` seeded tuples per (p, m).
std::vector<LemmaTask> default_lemma_grid(LemmaId id, unsigned random_b2 = 50, std::uint64_t seed = 20240611);

}  // namespace gcl
