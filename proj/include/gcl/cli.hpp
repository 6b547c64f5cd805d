#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gcl/lemmas.hpp"
#include "gcl/search.hpp"
#include "gcl/sequences.hpp"
#include "gcl/theorem.hpp"

namespace gcl::cli {

enum class Command { Seq, VerifyLemma, VerifyGauss, VerifyTheorem1, Consistency, Search };
enum class Format { Json, Csv, Text };

const char* to_string(Command c);

/// Exit codes.
inline constexpr int kAllPass = 0;
inline constexpr int kSomeFail = 1;
inline constexpr int kUsageError = 2;

/// Thrown for invalid configurations; run() maps it to kUsageError.
struct UsageError : Error {
  using Error::Error;
};

/// Empty grid vectors mean "use the command's default grid".
struct RunConfig {
  Command command = Command::Seq;
  Format format = Format::Json;
  unsigned workers = 1;
  std::size_t max_index = kDefaultMaxIndex;
  std::uint64_t budget = 10'000'000;

  // seq
  std::optional<SequenceSpec> spec;
  std::size_t count = 10;

  // verify-lemma, verify-gauss, verify-theorem1, consistency
  std::vector<LemmaId> lemmas;  // empty: all twelve
  std::vector<long> p, n, m, l, k, a, b, c;
  std::vector<OssParams> rst;
  unsigned random_b2 = 50;
  std::uint64_t seed = 20240611;

  // search
  SearchFamily family = SearchFamily::Zagier;
  std::vector<std::optional<IntRange>> ranges;  // per parameter; nullopt keeps the default
  std::optional<std::size_t> horizon;
};

/// "1,2,5..7" -> {1, 2, 5, 6, 7}. Throws UsageError.
std::vector<long> parse_grid(const std::string& text);
/// "2,2,0" -> {2, 2, 0}. Throws UsageError.
OssParams parse_rst(const std::string& text);
/// "named:D", "oss:2,2,0", "zagier:7,-8,2", "az:17,5,1", "cooper:13,4,-27,3".
SequenceSpec parse_spec(const std::string& text);

/// Runs every task of the configuration, writing records and a summary line
/// to `out`. Returns kAllPass, kSomeFail or kUsageError.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (argv[0] is the program name) and executes.
/// GCL_MAX_INDEX and GCL_WORKERS supply defaults that flags override.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gcl::cli
