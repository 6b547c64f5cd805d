#include "gcl/bernoulli.hpp"

#include "gcl/binomial.hpp"

namespace gcl {

BernoulliTable::BernoulliTable(std::size_t cap) : cap_(cap) {
  values_.emplace_back(1);
  values_.emplace_back(Rational(-1, 2));
}

std::size_t BernoulliTable::computed() const {
  std::lock_guard lock(mutex_);
  return values_.size();
}

Rational BernoulliTable::at(std::size_t n) const {
  if (n > cap_) {
    throw CapExceeded("bernoulli: index " + std::to_string(n) + " exceeds cap " + std::to_string(cap_));
  }
  std::lock_guard lock(mutex_);
  extend_to(n);
  return values_[n];
}

// Caller holds mutex_.
void BernoulliTable::extend_to(std::size_t n) const {
  while (values_.size() <= n) {
    const std::size_t m = values_.size();
    if (m % 2 == 1) {
      values_.emplace_back(0);
      continue;
    }
    // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j; odd j >= 3 contribute nothing.
    mpq_class acc = 0;
    Integer c = 1;  // C(m+1, j)
    for (std::size_t j = 0; j < m; ++j) {
      if (j <= 1 || j % 2 == 0) acc += mpq_class(c) * values_[j].raw();
      c *= static_cast<unsigned long>(m + 1 - j);
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(j + 1));
    }
    acc /= static_cast<unsigned long>(m + 1);
    values_.emplace_back(mpq_class(-acc));
  }
}

const BernoulliTable& default_bernoulli_table() {
  static const BernoulliTable table;
  return table;
}

Rational bernoulli_exact(std::size_t n) { return default_bernoulli_table().at(n); }

Integer von_staudt_clausen_denominator(std::size_t n) {
  if (n < 2 || n % 2 == 1) throw std::invalid_argument("von Staudt-Clausen needs even n >= 2");
  Integer d = 1;
  for (std::size_t q = 2; q <= n + 1; ++q) {
    if (n % (q - 1) == 0 && is_prime(q)) d *= static_cast<unsigned long>(q);
  }
  return d;
}

const char* to_string(BernoulliSource s) { return s == BernoulliSource::Exact ? "exact" : "harmonic"; }

Residue b_pm3_harmonic(std::uint64_t p) {
  const PrimePowerModulus mod(p, 1);
  Residue sum(0, mod);
  for (std::uint64_t k = 1; k <= (p - 1) / 2; ++k) {
    Integer cube = Integer(static_cast<unsigned long>(k));
    cube = cube * cube * cube;
    sum += Residue(cube, mod).inverse();
  }
  return sum * reduce_mod(Rational(-1, 2), mod);
}

BernoulliResidue b_pm3_mod_p(std::uint64_t p, const BernoulliTable& table) {
  const PrimePowerModulus mod(p, 1);
  Residue harmonic = b_pm3_harmonic(p);
  if (p - 3 > table.cap()) {
    return {std::move(harmonic), BernoulliSource::Harmonic, std::nullopt};
  }
  Rational exact = table.at(p - 3);
  Residue via_exact = reduce_mod(exact, mod);
  if (!(via_exact == harmonic)) {
    throw InternalMismatch("B_{p-3} mod " + std::to_string(p) + ": exact route gives " + via_exact.to_string() +
                           ", harmonic route gives " + harmonic.to_string());
  }
  return {std::move(via_exact), BernoulliSource::Exact, std::move(exact)};
}

}  // namespace gcl
