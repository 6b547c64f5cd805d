#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace gcl {

using Integer = mpz_class;

// Error hierarchy shared by every module.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DenominatorDivisibleByP : Error {
  using Error::Error;
};
struct ModulusMismatch : Error {
  using Error::Error;
};
struct NotPrime : Error {
  using Error::Error;
};
struct CapExceeded : Error {
  using Error::Error;
};

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& q);

  Integer numerator() const { return q_.get_num(); }
  Integer denominator() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  std::string to_string() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& x);

/// p-adic valuation; zero has valuation +infinity.
class Valuation {
 public:
  constexpr Valuation(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  static constexpr Valuation infinity() { return Valuation(Tag{}); }

  constexpr bool is_infinite() const { return infinite_; }
  long value() const;  // throws on +infinity

  friend constexpr bool operator==(Valuation a, Valuation b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }
  friend Valuation operator+(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }

  std::string to_string() const;

 private:
  struct Tag {};
  constexpr explicit Valuation(Tag) : value_(0), infinite_(true) {}
  long value_;
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, Valuation v);

bool is_prime(std::uint64_t n);

/// Checked p^e on 64-bit integers; throws CapExceeded on overflow.
std::uint64_t ipow(std::uint64_t base, unsigned exp);

Integer power_of(std::uint64_t p, unsigned e);

/// Modulus p^e with p a prime >= 5 and e >= 1.
class PrimePowerModulus {
 public:
  PrimePowerModulus(std::uint64_t p, int e);

  std::uint64_t prime() const { return p_; }
  int exponent() const { return e_; }
  const Integer& value() const { return modulus_; }

  /// Same prime, different exponent.
  PrimePowerModulus with_exponent(int e) const;

  std::string to_string() const;  // e.g. "5^2"

  friend bool operator==(const PrimePowerModulus& a, const PrimePowerModulus& b) {
    return a.p_ == b.p_ && a.e_ == b.e_;
  }

 private:
  std::uint64_t p_;
  int e_;
  Integer modulus_;
};

/// Element of Z/p^e that remembers its modulus.
class Residue {
 public:
  Residue(Integer value, PrimePowerModulus modulus);

  const Integer& value() const { return value_; }
  const PrimePowerModulus& modulus() const { return modulus_; }

  bool is_zero() const { return value_ == 0; }
  bool is_unit() const;
  Residue inverse() const;  // throws DenominatorDivisibleByP for non-units

  /// Image under Z/p^e -> Z/p^f for f <= e.
  Residue reduce_to(int exponent) const;

  /// Valuation of the representative, capped at the modulus exponent.
  Valuation valuation() const;

  Residue& operator+=(const Residue& o);
  Residue& operator-=(const Residue& o);
  Residue& operator*=(const Residue& o);

  friend Residue operator+(Residue a, const Residue& b) { return a += b; }
  friend Residue operator-(Residue a, const Residue& b) { return a -= b; }
  friend Residue operator*(Residue a, const Residue& b) { return a *= b; }
  friend Residue operator-(const Residue& a);

  friend bool operator==(const Residue& a, const Residue& b);

  std::string to_string() const;  // "value mod p^e"

 private:
  void check_same(const Residue& o) const;

  Integer value_;
  PrimePowerModulus modulus_;
};

std::ostream& operator<<(std::ostream& os, const Residue& r);

Valuation ord_p(const Integer& x, std::uint64_t p);
Valuation ord_p(const Rational& x, std::uint64_t p);

/// ord_p(x - y) >= e; both denominators must be prime to p.
bool rational_congruent(const Rational& x, const Rational& y, const PrimePowerModulus& mod);

Residue reduce_mod(const Rational& x, const PrimePowerModulus& mod);

struct FloorSplit {
  std::uint64_t quotient;   // floor(k / p^m)
  std::uint64_t remainder;  // {k / p^m}
};

FloorSplit floor_div_and_remainder(std::uint64_t k, std::uint64_t p, unsigned m);

}  // namespace gcl
