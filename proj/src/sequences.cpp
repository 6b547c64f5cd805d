#include "gcl/sequences.hpp"

#include <sstream>
#include <stdexcept>

#include "gcl/binomial.hpp"

namespace gcl {

namespace {

struct NamedInfo {
  NamedId id;
  std::string_view name;
};

constexpr std::array<NamedInfo, 15> kNames = {{
    {NamedId::A, "A"},         {NamedId::B, "B"},         {NamedId::C, "C"},
    {NamedId::D, "D"},         {NamedId::E, "E"},         {NamedId::F, "F"},
    {NamedId::Delta, "delta"}, {NamedId::Eta, "eta"},     {NamedId::Alpha, "alpha"},
    {NamedId::Epsilon, "epsilon"}, {NamedId::Zeta, "zeta"}, {NamedId::Gamma, "gamma"},
    {NamedId::S7, "s7"},       {NamedId::S10, "s10"},     {NamedId::S18, "s18"},
}};

Integer ipow_signed(long base, long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), Integer(base).get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

Integer cube(const Integer& x) { return x * x * x; }
Integer square(const Integer& x) { return x * x; }

Integer franel(long n) {
  Integer sum = 0;
  for (long k = 0; k <= n; ++k) sum += cube(binom(n, k));
  return sum;
}

Integer named_formula(NamedId id, long n) {
  Integer sum = 0;
  switch (id) {
    case NamedId::A:
      return franel(n);
    case NamedId::B:
      for (long k = 0; 3 * k <= n; ++k) {
        Integer term = ipow_signed(3, n - 3 * k) * binom(n, 3 * k) * binom(3 * k, 2 * k) * binom(2 * k, k);
        if (k % 2) sum -= term; else sum += term;
      }
      return sum;
    case NamedId::C:
      for (long k = 0; k <= n; ++k) sum += square(binom(n, k)) * binom(2 * k, k);
      return sum;
    case NamedId::D:
      for (long k = 0; k <= n; ++k) sum += square(binom(n, k)) * binom(n + k, k);
      return sum;
    case NamedId::E:
      for (long k = 0; 2 * k <= n; ++k) sum += ipow_signed(4, n - 2 * k) * binom(n, 2 * k) * square(binom(2 * k, k));
      return sum;
    case NamedId::F:
      for (long k = 0; k <= n; ++k) {
        Integer term = ipow_signed(8, n - k) * binom(n, k) * franel(k);
        if (k % 2) sum -= term; else sum += term;
      }
      return sum;
    case NamedId::Delta:
      for (long k = 0; 3 * k <= n; ++k) {
        Integer term = ipow_signed(3, n - 3 * k) * binom(n, 3 * k) * binom(n + k, k) * binom(3 * k, 2 * k) *
                       binom(2 * k, k);
        if (k % 2) sum -= term; else sum += term;
      }
      return sum;
    case NamedId::Eta:
      for (long k = 0; k <= n; ++k) {
        Integer term = cube(binom(n, k)) * (binom(4 * n - 5 * k - 1, 3 * n) + binom(4 * n - 5 * k, 3 * n));
        if (k % 2) sum -= term; else sum += term;
      }
      return sum;
    case NamedId::Alpha:
      for (long k = 0; k <= n; ++k) sum += square(binom(n, k)) * binom(2 * k, k) * binom(2 * n - 2 * k, n - k);
      return sum;
    case NamedId::Epsilon:
      for (long k = 0; k <= n; ++k) sum += square(binom(n, k)) * square(binom(2 * k, n));
      return sum;
    case NamedId::Zeta:
      for (long k = 0; k <= n; ++k) {
        const Integer outer = square(binom(n, k));
        for (long l = 0; l <= n; ++l) sum += outer * binom(n, l) * binom(k, l) * binom(k + l, n);
      }
      return sum;
    case NamedId::Gamma:
      for (long k = 0; k <= n; ++k) sum += square(binom(n, k)) * square(binom(n + k, k));
      return sum;
    case NamedId::S7:
      for (long k = 0; k <= n; ++k) sum += square(binom(n, k)) * binom(n + k, k) * binom(2 * k, n);
      return sum;
    case NamedId::S10:
      for (long k = 0; k <= n; ++k) sum += square(square(binom(n, k)));
      return sum;
    case NamedId::S18:
      for (long k = 0; k <= n; ++k) {
        Integer term = binom(n, k) * binom(2 * k, k) * binom(2 * n - 2 * k, n - k) *
                       (binom(2 * n - 3 * k - 1, n) + binom(2 * n - 3 * k, n));
        if (k % 2) sum -= term; else sum += term;
      }
      return sum;
  }
  throw std::logic_error("named_formula: unknown id");
}

// One step of each recurrence family: returns u_{n+1} from u_n, u_{n-1}.
Rational step(const ZagierParams& z, long n, const Rational& un, const Rational& um1) {
  const Rational lead = Integer(z.A * n * n + z.A * n + z.lambda);
  const Rational back = Integer(z.B * n * n);
  return (lead * un - back * um1) / Rational(Integer((n + 1) * (n + 1)));
}

Rational step(const AlmkvistZudilinParams& p, long n, const Rational& un, const Rational& um1) {
  const Rational lead = Integer((2 * n + 1) * (p.a * n * n + p.a * n + p.b));
  const Rational back = Integer(p.c * n * n * n);
  return (lead * un - back * um1) / Rational(Integer((n + 1) * (n + 1) * (n + 1)));
}

Rational step(const CooperParams& p, long n, const Rational& un, const Rational& um1) {
  const Rational lead = Integer((2 * n + 1) * (p.a * n * n + p.a * n + p.b));
  const Rational back = Integer(n * (p.c * n * n + p.d));
  return (lead * un - back * um1) / Rational(Integer((n + 1) * (n + 1) * (n + 1)));
}

template <class Params>
std::vector<Rational> run_recurrence(const Params& params, std::size_t count) {
  std::vector<Rational> u;
  u.reserve(count);
  Rational prev = 0;  // u_{-1}
  Rational cur = 1;   // u_0
  for (std::size_t n = 0; n < count; ++n) {
    u.push_back(cur);
    Rational next = step(params, static_cast<long>(n), cur, prev);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return u;
}

}  // namespace

std::string_view to_string(NamedId id) {
  for (const auto& info : kNames) {
    if (info.id == id) return info.name;
  }
  return "?";
}

std::optional<NamedId> named_from_string(std::string_view s) {
  for (const auto& info : kNames) {
    if (info.name == s) return info.id;
  }
  if (s == "apery-a") return NamedId::Gamma;
  if (s == "apery-b") return NamedId::D;
  return std::nullopt;
}

std::string to_string(const SequenceSpec& spec) {
  std::ostringstream os;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, OssParams>) {
          os << "oss:" << v.r << ',' << v.s << ',' << v.t;
        } else if constexpr (std::is_same_v<T, ZagierParams>) {
          os << "zagier:" << v.A << ',' << v.B << ',' << v.lambda;
        } else if constexpr (std::is_same_v<T, AlmkvistZudilinParams>) {
          os << "az:" << v.a << ',' << v.b << ',' << v.c;
        } else if constexpr (std::is_same_v<T, CooperParams>) {
          os << "cooper:" << v.a << ',' << v.b << ',' << v.c << ',' << v.d;
        } else {
          os << "named:" << to_string(v.id);
        }
      },
      spec);
  return os.str();
}

OssParams make_oss(unsigned r, unsigned s, unsigned t) {
  if (r < 2) throw std::invalid_argument("OSS triple requires r >= 2, got r = " + std::to_string(r));
  return {r, s, t};
}

std::variant<ZagierParams, CooperParams> recurrence_of(NamedId id) {
  switch (id) {
    case NamedId::A: return ZagierParams{7, -8, 2};
    case NamedId::B: return ZagierParams{9, 27, 3};
    case NamedId::C: return ZagierParams{10, 9, 3};
    case NamedId::D: return ZagierParams{11, -1, 3};
    case NamedId::E: return ZagierParams{12, 32, 4};
    case NamedId::F: return ZagierParams{17, 72, 6};
    case NamedId::Delta: return CooperParams{7, 3, 81, 0};
    case NamedId::Eta: return CooperParams{11, 5, 125, 0};
    case NamedId::Alpha: return CooperParams{10, 4, 64, 0};
    case NamedId::Epsilon: return CooperParams{12, 4, 16, 0};
    case NamedId::Zeta: return CooperParams{9, 3, -27, 0};
    case NamedId::Gamma: return CooperParams{17, 5, 1, 0};
    case NamedId::S7: return CooperParams{13, 4, -27, 3};
    case NamedId::S10: return CooperParams{6, 2, -64, 4};
    case NamedId::S18: return CooperParams{14, 6, 192, -12};
  }
  throw std::logic_error("recurrence_of: unknown id");
}

namespace {

constexpr std::array<std::pair<OssParams, NamedId>, 6> kSpecialCases = {{
    {{3, 0, 0}, NamedId::A},
    {{2, 1, 0}, NamedId::D},
    {{2, 0, 2}, NamedId::Epsilon},
    {{2, 2, 0}, NamedId::Gamma},
    {{2, 1, 1}, NamedId::S7},
    {{4, 0, 0}, NamedId::S10},
}};

}  // namespace

std::optional<NamedId> special_case_row(const OssParams& oss) {
  for (const auto& [triple, id] : kSpecialCases) {
    if (triple == oss) return id;
  }
  return std::nullopt;
}

std::optional<OssParams> oss_triple_of(NamedId id) {
  for (const auto& [triple, row] : kSpecialCases) {
    if (row == id) return triple;
  }
  return std::nullopt;
}

std::vector<Rational> terms_by_recurrence(const SequenceSpec& spec, std::size_t count) {
  return std::visit(
      [&](const auto& v) -> std::vector<Rational> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, OssParams>) {
          const auto row = special_case_row(v);
          if (!row) throw NoRecurrence("no recurrence is known for " + to_string(SequenceSpec{v}));
          return terms_by_recurrence(Named{*row}, count);
        } else if constexpr (std::is_same_v<T, Named>) {
          return std::visit([&](const auto& params) { return run_recurrence(params, count); }, recurrence_of(v.id));
        } else {
          return run_recurrence(v, count);
        }
      },
      spec);
}

Rational term_by_recurrence(const SequenceSpec& spec, std::size_t n) { return terms_by_recurrence(spec, n + 1).back(); }

bool has_closed_form(const SequenceSpec& spec) {
  return std::holds_alternative<OssParams>(spec) || std::holds_alternative<Named>(spec);
}

Integer term_by_formula(const SequenceSpec& spec, std::size_t n) {
  if (const auto* oss = std::get_if<OssParams>(&spec)) return oss_term_at(*oss, n, n);
  if (const auto* named = std::get_if<Named>(&spec)) return named_formula(named->id, static_cast<long>(n));
  throw NoClosedForm(to_string(spec) + " is a bare recurrence with no closed form");
}

ValidationReport cross_validate(const SequenceSpec& spec, std::size_t horizon) {
  if (!has_closed_form(spec)) throw std::invalid_argument("cross_validate: " + to_string(spec) + " has no closed form");
  ValidationReport report;
  report.horizon = horizon;
  const auto rec = terms_by_recurrence(spec, horizon);
  for (std::size_t n = 0; n < horizon; ++n) {
    if (!rec[n].is_integer() && !report.first_nonintegral) report.first_nonintegral = n;
    if (!(rec[n] == Rational(term_by_formula(spec, n))) && !report.first_mismatch) report.first_mismatch = n;
  }
  report.agree = !report.first_mismatch && !report.first_nonintegral;
  return report;
}

Integer oss_term_at(const OssParams& oss, std::size_t n, std::size_t cap) {
  if (oss.r < 2) throw std::invalid_argument("OSS triple requires r >= 2");
  if (n > cap) {
    throw CapExceeded("oss_term_at: index " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  const auto N = static_cast<unsigned long>(n);
  BinomialRow row(N);        // C(N, k)
  CentralShiftRow shift(N);  // C(N + k, k)
  Integer doubled = 0;       // C(2k, N), tracked once 2k >= N
  Integer sum = 0;
  Integer term;
  for (unsigned long k = 0; k <= N; ++k, row.advance(), shift.advance()) {
    if (oss.t > 0) {
      if (2 * k < N) continue;
      if (doubled == 0) {
        doubled = binom(static_cast<long>(2 * k), static_cast<long>(N));
      } else {
        // C(2k, N) from C(2k-2, N)
        doubled *= (2 * k - 1) * (2 * k);
        mpz_divexact_ui(doubled.get_mpz_t(), doubled.get_mpz_t(), (2 * k - 1 - N) * (2 * k - N));
      }
    }
    term = pow_conv(row.value(), oss.r);
    if (oss.s > 0) term *= pow_conv(shift.value(), oss.s);
    if (oss.t > 0) term *= pow_conv(doubled, oss.t);
    sum += term;
  }
  return sum;
}

}  // namespace gcl
