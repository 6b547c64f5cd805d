#include "gcl/search.hpp"

#include <array>

#include "gcl/parallel.hpp"

namespace gcl {

namespace {

using i128 = __int128;

constexpr std::size_t kClassifyTerms = 10;

Integer to_integer(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  Integer hi = static_cast<unsigned long>(mag >> 64);
  Integer r = static_cast<unsigned long>(mag & 0xffffffffffffffffULL);
  r += hi << 64;
  return neg ? Integer(-r) : r;
}

struct StepCoefficients {
  long lead;  // multiplies u_n
  long back;  // multiplies u_{n-1}
  long den;   // (n+1)^2 or (n+1)^3
};

StepCoefficients coefficients(SearchFamily family, std::span<const long> q, long n) {
  if (family == SearchFamily::Zagier) {
    return {q[0] * n * n + q[0] * n + q[2], q[1] * n * n, (n + 1) * (n + 1)};
  }
  return {(2 * n + 1) * (q[0] * n * n + q[0] * n + q[1]), n * (q[2] * n * n + q[3]), (n + 1) * (n + 1) * (n + 1)};
}

// Finishes a probe in GMP arithmetic from index `n` (u_n = cur, u_{n-1} = prev).
void probe_gmp(SearchFamily family, std::span<const long> params, std::size_t horizon, std::size_t n, Integer prev,
               Integer cur, IntegralityProbe& out) {
  Integer num;
  for (; n + 1 < horizon; ++n) {
    const auto c = coefficients(family, params, static_cast<long>(n));
    num = cur * c.lead - prev * c.back;
    if (!mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(c.den))) {
      out.abandoned_at = n + 1;
      return;
    }
    mpz_divexact_ui(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(c.den));
    prev = std::move(cur);
    cur = num;
    out.terms.push_back(cur);
  }
}

const std::array<std::vector<Integer>, 15>& named_prefixes() {
  static const auto table = [] {
    std::array<std::vector<Integer>, 15> t;
    for (std::size_t i = 0; i < kAllNamed.size(); ++i) {
      for (std::size_t n = 0; n < kClassifyTerms; ++n) t[i].push_back(term_by_formula(Named{kAllNamed[i]}, n));
    }
    return t;
  }();
  return table;
}

bool is_degenerate(std::span<const Integer> terms) {
  const std::size_t len = std::min(terms.size(), kClassifyTerms);
  if (len < 2) return false;
  // Eventually zero: everything after the first zero term stays zero.
  std::size_t first_zero = len;
  for (std::size_t i = 0; i < len; ++i) {
    if (terms[i] == 0) {
      first_zero = i;
      break;
    }
  }
  if (first_zero < len) {
    for (std::size_t i = first_zero; i < len; ++i) {
      if (terms[i] != 0) return false;
    }
    return true;
  }
  // Constant ratio u_{n+1} / u_n.
  for (std::size_t i = 1; i + 1 < len; ++i) {
    if (terms[i + 1] * terms[i - 1] != terms[i] * terms[i]) return false;
  }
  return true;
}

}  // namespace

const char* to_string(SearchFamily f) { return f == SearchFamily::Zagier ? "zagier" : "cooper"; }

std::string to_string(const Classification& c) {
  switch (c.kind) {
    case ClassKind::KnownSporadic:
      return "known:" + std::string(to_string(*c.id));
    case ClassKind::Degenerate:
      return "degenerate";
    case ClassKind::Unclassified:
      return "unclassified";
  }
  return "?";
}

std::uint64_t SearchBox::candidates() const {
  std::uint64_t total = 1;
  for (const auto& r : ranges) {
    const auto s = r.size();
    if (s != 0 && total > UINT64_MAX / s) return UINT64_MAX;
    total *= s;
  }
  return total;
}

SearchBox default_zagier_box() { return {SearchFamily::Zagier, {{0, 20}, {-100, 100}, {0, 10}}, 50}; }

SearchBox default_cooper_box() { return {SearchFamily::Cooper, {{0, 20}, {0, 10}, {-250, 250}, {-15, 15}}, 30}; }

SequenceSpec spec_for(SearchFamily family, std::span<const long> q) {
  if (family == SearchFamily::Zagier) {
    if (q.size() != 3) throw std::invalid_argument("Zagier family takes (A, B, lambda)");
    return ZagierParams{q[0], q[1], q[2]};
  }
  if (q.size() != 4) throw std::invalid_argument("Cooper family takes (a, b, c, d)");
  return CooperParams{q[0], q[1], q[2], q[3]};
}

IntegralityProbe probe_integrality(SearchFamily family, std::span<const long> params, std::size_t horizon) {
  IntegralityProbe out;
  if (horizon == 0) return out;
  out.terms.reserve(horizon);
  std::vector<i128> fast;
  fast.reserve(horizon);
  i128 prev = 0, cur = 1;
  fast.push_back(cur);
  std::size_t n = 0;
  bool overflow = false;
  for (; n + 1 < horizon; ++n) {
    const auto c = coefficients(family, params, static_cast<long>(n));
    i128 a, b, num;
    if (__builtin_mul_overflow(cur, static_cast<i128>(c.lead), &a) ||
        __builtin_mul_overflow(prev, static_cast<i128>(c.back), &b) || __builtin_sub_overflow(a, b, &num)) {
      overflow = true;
      break;
    }
    if (num % c.den != 0) {
      out.abandoned_at = n + 1;
      break;
    }
    prev = cur;
    cur = num / c.den;
    fast.push_back(cur);
  }
  for (auto v : fast) out.terms.push_back(to_integer(v));
  if (overflow) probe_gmp(family, params, horizon, n, to_integer(prev), to_integer(cur), out);
  return out;
}

Classification classify(std::span<const Integer> terms) {
  const std::size_t len = std::min(terms.size(), kClassifyTerms);
  if (len >= 3) {
    const auto& prefixes = named_prefixes();
    for (std::size_t i = 0; i < prefixes.size(); ++i) {
      if (std::equal(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(len), prefixes[i].begin())) {
        return {ClassKind::KnownSporadic, kAllNamed[i]};
      }
    }
  }
  if (is_degenerate(terms)) return {ClassKind::Degenerate, std::nullopt};
  return {};
}

SearchResult run_search(const SearchBox& box, const SearchOptions& options) {
  const std::size_t arity = box.family == SearchFamily::Zagier ? 3 : 4;
  if (box.ranges.size() != arity) throw std::invalid_argument("search box has the wrong number of ranges");
  if (box.horizon < 10) throw std::invalid_argument("search horizon must be >= 10");
  const std::uint64_t total = box.candidates();
  if (total > options.budget) {
    throw BudgetExceeded("search box holds " + std::to_string(total) + " tuples, budget is " +
                         std::to_string(options.budget));
  }

  // One chunk per (first, second) parameter pair; chunks merge in order.
  const auto& r0 = box.ranges[0];
  const auto& r1 = box.ranges[1];
  const std::size_t chunks = static_cast<std::size_t>(r0.size() * r1.size());

  SearchResult result;
  result.candidates = total;
  parallel_ordered(
      chunks, options.workers,
      [&](std::size_t chunk) {
        std::vector<SearchHit> hits;
        std::vector<long> q(arity);
        q[0] = r0.lo + static_cast<long>(chunk / r1.size());
        q[1] = r1.lo + static_cast<long>(chunk % r1.size());
        auto visit = [&](const auto& self, std::size_t depth) -> void {
          if (depth == arity) {
            auto probe = probe_integrality(box.family, q, box.horizon);
            if (probe.abandoned_at) return;
            // Confirm through the exact rational recurrence.
            const auto exact = terms_by_recurrence(spec_for(box.family, q), box.horizon);
            for (std::size_t i = 0; i < box.horizon; ++i) {
              if (!(exact[i] == Rational(probe.terms[i]))) {
                throw std::logic_error("search: fast path disagrees with exact recurrence for " +
                                       to_string(spec_for(box.family, q)));
              }
            }
            SearchHit hit{q, std::move(probe.terms), {}};
            hit.classification = classify(hit.first_terms);
            hits.push_back(std::move(hit));
            return;
          }
          for (long v = box.ranges[depth].lo; v <= box.ranges[depth].hi; ++v) {
            q[depth] = v;
            self(self, depth + 1);
          }
        };
        visit(visit, 2);
        return hits;
      },
      [&](std::size_t, std::vector<SearchHit>&& hits) {
        for (auto& h : hits) result.hits.push_back(std::move(h));
      });
  return result;
}

}  // namespace gcl
