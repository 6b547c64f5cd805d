#include "gcl/binomial.hpp"

namespace gcl {

Integer binom(long top, long bottom) {
  if (top < 0 || bottom < 0 || bottom > top) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(bottom));
  return r;
}

Integer pow_conv(const Integer& x, unsigned long t) {
  if (t == 0) return 1;
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), t);
  return r;
}

Integer summand(long n, long k, unsigned r, unsigned s, unsigned t) {
  Integer v = pow_conv(binom(n, k), r);
  if (v == 0) return v;
  v *= pow_conv(binom(n + k, k), s);
  v *= pow_conv(binom(2 * k, n), t);
  return v;
}

void BinomialRow::advance() {
  if (k_ < n_) {
    value_ *= static_cast<unsigned long>(n_ - k_);
    mpz_divexact_ui(value_.get_mpz_t(), value_.get_mpz_t(), static_cast<unsigned long>(k_ + 1));
  } else {
    value_ = 0;
  }
  ++k_;
}

void CentralShiftRow::advance() {
  ++k_;
  value_ *= static_cast<unsigned long>(base_ + k_);
  mpz_divexact_ui(value_.get_mpz_t(), value_.get_mpz_t(), static_cast<unsigned long>(k_));
}

}  // namespace gcl
