#include "gcl/theorem.hpp"

#include "gcl/binomial.hpp"

namespace gcl {

namespace {

void check_task(const CongruenceTask& task) {
  PrimePowerModulus(task.p, 1);
  if (task.n < 1 || task.m < 1) throw std::invalid_argument("congruence task needs n, m >= 1");
  if (task.rst.r < 2) throw std::invalid_argument("congruence task needs r >= 2");
}

struct GaussTerms {
  Integer high, low;
};

GaussTerms gauss_terms(const CongruenceTask& task, std::size_t cap) {
  const std::uint64_t low_index = task.n * ipow(task.p, task.m - 1);
  const std::uint64_t high_index = low_index * task.p;
  return {oss_term_at(task.rst, high_index, cap), oss_term_at(task.rst, low_index, cap)};
}

}  // namespace

const char* to_string(CongruenceMode mode) { return mode == CongruenceMode::Gauss3 ? "gauss3" : "theorem1"; }

const char* to_string(ConsistencyStatus s) {
  switch (s) {
    case ConsistencyStatus::Agree: return "agree";
    case ConsistencyStatus::Disagree: return "disagree";
    case ConsistencyStatus::Skipped: return "skipped";
    case ConsistencyStatus::GaussFailure: return "gauss-failure";
  }
  return "?";
}

Rational correction_term(unsigned n, unsigned r, unsigned s, unsigned t) {
  if (r < 2) throw std::invalid_argument("correction_term: r must be >= 2");
  const long N = n;
  const long R = r, S = s, T = t;

  // Shared first sum: -1/3 sum_{k=0}^{n} C(n,k)^r C(n+k,k)^s C(2k,n)^t nk(sn+sk+rn-rk+4tk-2tn).
  Integer first = 0;
  for (long k = 0; k <= N; ++k) {
    const long weight = N * k * (S * N + S * k + R * N - R * k + 4 * T * k - 2 * T * N);
    if (weight == 0) continue;
    first += summand(N, k, r, s, t) * weight;
  }
  Rational total = Rational(first, 3) * Rational(-1);

  if (r == 2) {
    Integer second = 0;
    Integer third = 0;
    for (long k = 0; k < N; ++k) {
      const Integer base = pow_conv(binom(N, k), 2) * pow_conv(binom(N + k, k), s);
      const long d2 = (N - k) * (N - k);
      second += base * pow_conv(binom(2 * k, N), t) * (d2 * (9 * N * T - 3 * N * S + 24 * k - 18 * N + 14));
      third += base * pow_conv(binom(2 * k + 1, N), t) * (d2 * (9 * N * S + 15 * N * T - 24 * k + 6 * N - 10));
    }
    total += Rational(second, 6);
    total += Rational(third, 6);
  } else if (r == 3) {
    Integer second = 0;
    for (long k = 0; k < N; ++k) {
      const long d3 = (N - k) * (N - k) * (N - k);
      second += pow_conv(binom(N, k), 3) * pow_conv(binom(N + k, k), s) *
                (pow_conv(binom(2 * k, N), t) + pow_conv(binom(2 * k + 1, N), t)) * d3;
    }
    total += Rational(second, 4);
  }
  return total;
}

CongruenceReport verify_gauss3(const CongruenceTask& task, std::size_t cap) {
  check_task(task);
  auto [high, low] = gauss_terms(task, cap);
  CongruenceReport rep{task, high, low};
  rep.task.mode = CongruenceMode::Gauss3;
  rep.required_exponent = 3 * static_cast<long>(task.m);
  rep.achieved_exponent = ord_p(Integer(high - low), task.p);
  rep.pass = rep.achieved_exponent >= Valuation(rep.required_exponent);
  return rep;
}

CongruenceReport verify_theorem1_with(const CongruenceTask& task, const Rational& correction, std::size_t cap) {
  check_task(task);
  auto [high, low] = gauss_terms(task, cap);
  BernoulliResidue bern = b_pm3_mod_p(task.p);
  CongruenceReport rep{task, high, low, correction, bern};
  rep.task.mode = CongruenceMode::Theorem1;
  const long three_m = 3 * static_cast<long>(task.m);
  rep.required_exponent = three_m + 1;

  const Integer diff = high - low;
  const Integer scale = power_of(task.p, static_cast<unsigned>(three_m));
  if (bern.exact) {
    const Rational residual = Rational(diff) - Rational(scale) * *bern.exact * correction;
    rep.achieved_exponent = ord_p(residual, task.p);
  } else {
    // Only B_{p-3} mod p is known, so the residual is resolved to p^{3m+1}.
    const Valuation gauss = ord_p(diff, task.p);
    if (gauss < Valuation(three_m)) {
      rep.achieved_exponent = gauss;
    } else {
      const PrimePowerModulus mod(task.p, 1);
      const Integer quotient = diff / scale;
      const Residue residual = Residue(quotient, mod) - bern.residue * reduce_mod(correction, mod);
      rep.achieved_exponent = residual.is_zero() ? Valuation(three_m + 1) : Valuation(three_m);
    }
  }
  rep.pass = rep.achieved_exponent >= Valuation(rep.required_exponent);
  return rep;
}

CongruenceReport verify_theorem1(const CongruenceTask& task, std::size_t cap) {
  return verify_theorem1_with(task, correction_term(task.n, task.rst.r, task.rst.s, task.rst.t), cap);
}

CongruenceReport verify_congruence(const CongruenceTask& task, std::size_t cap) {
  return task.mode == CongruenceMode::Gauss3 ? verify_gauss3(task, cap) : verify_theorem1(task, cap);
}

ConsistencyReport consistency_sweep(unsigned n, const OssParams& rst, const std::vector<std::uint64_t>& primes,
                                    const std::vector<unsigned>& ms, std::size_t cap) {
  ConsistencyReport rep{n, rst, correction_term(n, rst.r, rst.s, rst.t), {}};
  for (auto p : primes) {
    const PrimePowerModulus mod(p, 1);
    const BernoulliResidue bern = b_pm3_mod_p(p);
    for (auto m : ms) {
      if (m < 1) throw std::invalid_argument("consistency_sweep: m must be >= 1");
      ConsistencyEntry entry{p, m, ConsistencyStatus::Skipped, std::nullopt, reduce_mod(rep.correction, mod),
                             bern.source};
      if (bern.residue.is_zero()) {
        rep.entries.push_back(std::move(entry));
        continue;
      }
      const std::uint64_t low_index = n * ipow(p, m - 1);
      const Integer diff = oss_term_at(rst, low_index * p, cap) - oss_term_at(rst, low_index, cap);
      const Integer scale = power_of(p, 3 * m);
      if (!mpz_divisible_p(diff.get_mpz_t(), scale.get_mpz_t())) {
        entry.status = ConsistencyStatus::GaussFailure;
      } else {
        entry.extracted = Residue(Integer(diff / scale), mod) * bern.residue.inverse();
        entry.status = *entry.extracted == *entry.expected ? ConsistencyStatus::Agree : ConsistencyStatus::Disagree;
      }
      if (entry.status != ConsistencyStatus::Agree) rep.consistent = false;
      rep.entries.push_back(std::move(entry));
    }
  }
  return rep;
}

std::vector<OssParams> default_rst_rows() {
  return {{3, 0, 0}, {2, 1, 0}, {2, 0, 2}, {2, 2, 0}, {2, 1, 1}, {4, 0, 0}, {2, 2, 1}, {3, 1, 1}, {5, 0, 0}};
}

std::vector<std::uint64_t> default_primes() { return {5, 7, 11, 13}; }

std::vector<CongruenceTask> default_congruence_grid(CongruenceMode mode) {
  std::vector<CongruenceTask> grid;
  for (auto p : default_primes()) {
    for (unsigned n : {1u, 2u}) {
      for (unsigned m : {1u, 2u}) {
        for (const auto& rst : default_rst_rows()) grid.push_back({p, n, m, rst, mode});
      }
    }
  }
  return grid;
}

}  // namespace gcl
