#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gcl/exact_arith.hpp"

namespace gcl {

struct NoClosedForm : Error {
  using Error::Error;
};
struct NoRecurrence : Error {
  using Error::Error;
};

// Rows of the Zagier table (A..F) and the Cooper table (delta..s18).
enum class NamedId { A, B, C, D, E, F, Delta, Eta, Alpha, Epsilon, Zeta, Gamma, S7, S10, S18 };

inline constexpr std::array<NamedId, 15> kAllNamed = {
    NamedId::A,     NamedId::B,     NamedId::C,       NamedId::D,    NamedId::E,
    NamedId::F,     NamedId::Delta, NamedId::Eta,     NamedId::Alpha, NamedId::Epsilon,
    NamedId::Zeta,  NamedId::Gamma, NamedId::S7,      NamedId::S10,  NamedId::S18};

std::string_view to_string(NamedId id);
std::optional<NamedId> named_from_string(std::string_view s);

/// A_n^{(r,s,t)} = sum_k C(n,k)^r C(n+k,k)^s C(2k,n)^t, r >= 2.
struct OssParams {
  unsigned r, s, t;
  friend bool operator==(const OssParams&, const OssParams&) = default;
};

/// (n+1)^2 u_{n+1} = (A n^2 + A n + lambda) u_n - B n^2 u_{n-1}
struct ZagierParams {
  long A, B, lambda;
  friend bool operator==(const ZagierParams&, const ZagierParams&) = default;
};

/// (n+1)^3 u_{n+1} = (2n+1)(a n^2 + a n + b) u_n - c n^3 u_{n-1}
struct AlmkvistZudilinParams {
  long a, b, c;
  friend bool operator==(const AlmkvistZudilinParams&, const AlmkvistZudilinParams&) = default;
};

/// (n+1)^3 u_{n+1} = (2n+1)(a n^2 + a n + b) u_n - n (c n^2 + d) u_{n-1}
struct CooperParams {
  long a, b, c, d;
  friend bool operator==(const CooperParams&, const CooperParams&) = default;
};

struct Named {
  NamedId id;
  friend bool operator==(const Named&, const Named&) = default;
};

using SequenceSpec = std::variant<OssParams, ZagierParams, AlmkvistZudilinParams, CooperParams, Named>;

std::string to_string(const SequenceSpec& spec);

/// Throws std::invalid_argument when r < 2.
OssParams make_oss(unsigned r, unsigned s, unsigned t);

/// Recurrence parameters of a named row: ZagierParams for A..F, CooperParams otherwise.
std::variant<ZagierParams, CooperParams> recurrence_of(NamedId id);

/// Table row reached by a special-case OSS triple, if any.
std::optional<NamedId> special_case_row(const OssParams& oss);

/// OSS triple of a named row, if it is one of the six special cases.
std::optional<OssParams> oss_triple_of(NamedId id);

/// u_0..u_{count-1} with u_{-1} = 0, u_0 = 1, kept as exact rationals.
std::vector<Rational> terms_by_recurrence(const SequenceSpec& spec, std::size_t count);
Rational term_by_recurrence(const SequenceSpec& spec, std::size_t n);

/// Closed-form binomial sum. Throws NoClosedForm for bare recurrences.
Integer term_by_formula(const SequenceSpec& spec, std::size_t n);
bool has_closed_form(const SequenceSpec& spec);

struct ValidationReport {
  std::size_t horizon = 0;
  bool agree = true;
  std::optional<std::size_t> first_mismatch;     // recurrence != formula
  std::optional<std::size_t> first_nonintegral;  // recurrence term not an integer
};

/// Recurrence against closed form for n < horizon. OSS triples use the
/// recurrence of their table row.
ValidationReport cross_validate(const SequenceSpec& spec, std::size_t horizon);

inline constexpr std::size_t kDefaultMaxIndex = 5000;

/// A_N^{(r,s,t)} by direct streaming summation.
Integer oss_term_at(const OssParams& oss, std::size_t n, std::size_t cap = kDefaultMaxIndex);

}  // namespace gcl
