#include "gcl/exact_arith.hpp"

#include <array>
#include <limits>
#include <ostream>
#include <sstream>

namespace gcl {

Rational::Rational(const Integer& num, const Integer& den) : q_(num, den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  q_.canonicalize();
}

Rational::Rational(const mpq_class& q) : q_(q) {
  if (q_.get_den() == 0) throw std::domain_error("Rational: zero denominator");
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rational::to_string() const { return q_.get_str(); }

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

long Valuation::value() const {
  if (infinite_) throw std::logic_error("Valuation: value() of +infinity");
  return value_;
}

std::string Valuation::to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

std::ostream& operator<<(std::ostream& os, Valuation v) { return os << v.to_string(); }

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

// Miller-Rabin with the first twelve prime bases is deterministic below 2^64.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto q : bases) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : bases) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
      throw CapExceeded("ipow: " + std::to_string(base) + "^" + std::to_string(exp) + " overflows 64 bits");
    }
    r *= base;
  }
  return r;
}

Integer power_of(std::uint64_t p, unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

PrimePowerModulus::PrimePowerModulus(std::uint64_t p, int e) : p_(p), e_(e) {
  if (p < 5 || !is_prime(p)) throw NotPrime("modulus prime must be a prime >= 5, got " + std::to_string(p));
  if (e < 1) throw std::invalid_argument("modulus exponent must be >= 1, got " + std::to_string(e));
  modulus_ = power_of(p, static_cast<unsigned>(e));
}

PrimePowerModulus PrimePowerModulus::with_exponent(int e) const { return PrimePowerModulus(p_, e); }

std::string PrimePowerModulus::to_string() const { return std::to_string(p_) + "^" + std::to_string(e_); }

Residue::Residue(Integer value, PrimePowerModulus modulus) : value_(std::move(value)), modulus_(std::move(modulus)) {
  mpz_fdiv_r(value_.get_mpz_t(), value_.get_mpz_t(), modulus_.value().get_mpz_t());
}

bool Residue::is_unit() const { return mpz_divisible_ui_p(value_.get_mpz_t(), modulus_.prime()) == 0; }

Residue Residue::inverse() const {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), value_.get_mpz_t(), modulus_.value().get_mpz_t()) == 0) {
    throw DenominatorDivisibleByP("Residue: " + to_string() + " is not invertible");
  }
  return Residue(inv, modulus_);
}

Residue Residue::reduce_to(int exponent) const {
  if (exponent > modulus_.exponent()) {
    throw ModulusMismatch("Residue: cannot lift " + modulus_.to_string() + " to exponent " + std::to_string(exponent));
  }
  return Residue(value_, modulus_.with_exponent(exponent));
}

Valuation Residue::valuation() const {
  if (value_ == 0) return Valuation(modulus_.exponent());
  const Valuation v = ord_p(value_, modulus_.prime());
  return v;
}

void Residue::check_same(const Residue& o) const {
  if (!(modulus_ == o.modulus_)) {
    throw ModulusMismatch("Residue: mixing moduli " + modulus_.to_string() + " and " + o.modulus_.to_string());
  }
}

Residue& Residue::operator+=(const Residue& o) {
  check_same(o);
  value_ += o.value_;
  if (value_ >= modulus_.value()) value_ -= modulus_.value();
  return *this;
}

Residue& Residue::operator-=(const Residue& o) {
  check_same(o);
  value_ -= o.value_;
  if (value_ < 0) value_ += modulus_.value();
  return *this;
}

Residue& Residue::operator*=(const Residue& o) {
  check_same(o);
  value_ *= o.value_;
  mpz_fdiv_r(value_.get_mpz_t(), value_.get_mpz_t(), modulus_.value().get_mpz_t());
  return *this;
}

Residue operator-(const Residue& a) { return Residue(Integer(-a.value_), a.modulus_); }

bool operator==(const Residue& a, const Residue& b) {
  a.check_same(b);
  return a.value_ == b.value_;
}

std::string Residue::to_string() const { return value_.get_str() + " mod " + modulus_.to_string(); }

std::ostream& operator<<(std::ostream& os, const Residue& r) { return os << r.to_string(); }

Valuation ord_p(const Integer& x, std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("ord_p: p must be >= 2");
  if (x == 0) return Valuation::infinity();
  Integer pp(static_cast<unsigned long>(p));
  Integer rest;
  const auto v = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
  return Valuation(static_cast<long>(v));
}

Valuation ord_p(const Rational& x, std::uint64_t p) {
  if (x.is_zero()) return Valuation::infinity();
  return Valuation(ord_p(x.numerator(), p).value() - ord_p(x.denominator(), p).value());
}

namespace {

void require_p_free_denominator(const Rational& x, std::uint64_t p) {
  if (mpz_divisible_ui_p(x.denominator().get_mpz_t(), p)) {
    throw DenominatorDivisibleByP("denominator of " + x.to_string() + " is divisible by " + std::to_string(p));
  }
}

}  // namespace

bool rational_congruent(const Rational& x, const Rational& y, const PrimePowerModulus& mod) {
  require_p_free_denominator(x, mod.prime());
  require_p_free_denominator(y, mod.prime());
  return ord_p(x - y, mod.prime()) >= Valuation(mod.exponent());
}

Residue reduce_mod(const Rational& x, const PrimePowerModulus& mod) {
  require_p_free_denominator(x, mod.prime());
  Integer inv;
  mpz_invert(inv.get_mpz_t(), x.denominator().get_mpz_t(), mod.value().get_mpz_t());
  return Residue(Integer(x.numerator() * inv), mod);
}

FloorSplit floor_div_and_remainder(std::uint64_t k, std::uint64_t p, unsigned m) {
  const std::uint64_t pm = ipow(p, m);
  return {k / pm, k % pm};
}

}  // namespace gcl
