#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "gcl/cli.hpp"
#include "json.hpp"

using namespace gcl;
using namespace gcl::cli;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "gcl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(nlohmann::json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("grid syntax") {
  CHECK(parse_grid("1,2,5..7") == std::vector<long>{1, 2, 5, 6, 7});
  CHECK(parse_grid("-2..1") == std::vector<long>{-2, -1, 0, 1});
  CHECK(parse_grid("3") == std::vector<long>{3});
  CHECK_THROWS_AS(parse_grid("1,,2"), UsageError);
  CHECK_THROWS_AS(parse_grid("5..3"), UsageError);
  CHECK_THROWS_AS(parse_grid("x"), UsageError);
  CHECK(parse_rst("2,2,0") == OssParams{2, 2, 0});
  CHECK_THROWS_AS(parse_rst("1,0,0"), UsageError);
  CHECK_THROWS_AS(parse_rst("2,2"), UsageError);
}

TEST_CASE("sequence spec syntax") {
  CHECK(parse_spec("named:D") == SequenceSpec{Named{NamedId::D}});
  CHECK(parse_spec("named:s18") == SequenceSpec{Named{NamedId::S18}});
  CHECK(parse_spec("oss:2,1,1") == SequenceSpec{OssParams{2, 1, 1}});
  CHECK(parse_spec("zagier:7,-8,2") == SequenceSpec{ZagierParams{7, -8, 2}});
  CHECK(parse_spec("az:17,5,1") == SequenceSpec{AlmkvistZudilinParams{17, 5, 1}});
  CHECK(parse_spec("cooper:13,4,-27,3") == SequenceSpec{CooperParams{13, 4, -27, 3}});
  CHECK_THROWS_AS(parse_spec("named:Q"), UsageError);
  CHECK_THROWS_AS(parse_spec("D"), UsageError);
}

TEST_CASE("seq prints Apery numbers") {
  const auto r = invoke({"seq", "--spec", "named:D", "--count", "5"});
  CHECK(r.code == kAllPass);
  const auto recs = lines(r.out);
  REQUIRE(recs.size() == 6);
  const char* expected[] = {"1", "3", "19", "147", "1251"};
  for (int i = 0; i < 5; ++i) {
    CHECK(recs[i]["value"] == expected[i]);
    CHECK(recs[i]["n"] == i);
  }
  CHECK(recs[5]["summary"]["total"] == 5);
  const auto text = invoke({"seq", "--spec", "named:D", "--count", "5", "--format", "text"});
  CHECK(text.out.find("n=4 value=1251") != std::string::npos);
}

TEST_CASE("theorem record for the hand-checked case") {
  const auto r = invoke({"verify-theorem1", "--p", "5", "--n", "1", "--m", "1", "--rst", "2,2,0", "--format", "json"});
  CHECK(r.code == kAllPass);
  const auto recs = lines(r.out);
  REQUIRE(recs.size() == 2);
  const auto& rec = recs[0];
  CHECK(rec["pass"] == true);
  CHECK(rec["achieved_exponent"].get<long>() >= 4);
  CHECK(rec["a_high"] == "819005");
  CHECK(rec["modulus"] == "5^4");
  CHECK(rec["correction"] == "-14/3");
  CHECK(rec["bernoulli_source"] == "exact");
}

TEST_CASE("lemma sweep yields one record per grid point") {
  const auto r = invoke({"verify-lemma", "--id", "b7", "--p", "5,7", "--m", "1,2", "--n", "0,1,2"});
  CHECK(r.code == kAllPass);
  const auto recs = lines(r.out);
  REQUIRE(recs.size() == 13);
  for (int i = 0; i < 12; ++i) {
    CHECK(recs[i]["lemma"] == "b7");
    CHECK(recs[i]["pass"] == true);
  }
  CHECK(recs[0]["p"] == 5);
  CHECK(recs[11]["p"] == 7);
  CHECK(recs[12]["summary"]["pass"] == 12);
}

TEST_CASE("failures and usage errors map to exit codes") {
  CHECK(invoke({"verify-gauss", "--p", "4"}).code == kUsageError);
  CHECK(invoke({"verify-gauss", "--p", "4"}).err.find("prime") != std::string::npos);
  CHECK(invoke({"verify-gauss", "--n", "0"}).code == kUsageError);
  CHECK(invoke({"verify-gauss", "--p", "13", "--m", "4"}).code == kUsageError);  // 13^4 is over the index cap
  CHECK(invoke({"nonsense"}).code == kUsageError);
  CHECK(invoke({"seq"}).code == kUsageError);
  CHECK(invoke({"seq", "--spec", "named:D", "--format", "xml"}).code == kUsageError);
  CHECK(invoke({"search", "--family", "cooper", "--budget", "10"}).code == kUsageError);
  CHECK(invoke({"search", "--family", "zagier", "--a", "1"}).code == kUsageError);
  CHECK(invoke({"search", "--horizon", "5"}).code == kUsageError);
  // Nested lemmas at l = 0 fail at several primes.
  const auto nested = invoke({"verify-lemma", "--id", "b16", "--l", "0", "--p", "5"});
  CHECK(nested.code == kSomeFail);
  CHECK(lines(nested.out).back()["summary"]["fail"] == 3);
  // A per-task error is a failing record, not a crash.
  const auto degenerate = invoke({"verify-lemma", "--id", "b1", "--n", "2", "--k", "2", "--p", "5"});
  CHECK(degenerate.code == kSomeFail);
  CHECK(lines(degenerate.out)[0]["status"] == "error");
  CHECK(invoke({"seq", "--help"}).code == kAllPass);
}

TEST_CASE("max index comes from the flag, then the environment") {
  CHECK(invoke({"verify-gauss", "--p", "13", "--n", "2", "--m", "2", "--rst", "2,2,0", "--max-index", "300"}).code ==
        kUsageError);
  ::setenv("GCL_MAX_INDEX", "300", 1);
  CHECK(invoke({"verify-gauss", "--p", "13", "--n", "2", "--m", "2", "--rst", "2,2,0"}).code == kUsageError);
  CHECK(invoke({"verify-gauss", "--p", "13", "--n", "2", "--m", "2", "--rst", "2,2,0", "--max-index", "400"}).code ==
        kAllPass);
  ::setenv("GCL_MAX_INDEX", "zero", 1);
  CHECK(invoke({"seq", "--spec", "named:A"}).code == kUsageError);
  ::unsetenv("GCL_MAX_INDEX");
  ::setenv("GCL_WORKERS", "3", 1);
  CHECK(invoke({"seq", "--spec", "named:A"}).code == kAllPass);
  ::unsetenv("GCL_WORKERS");
}

TEST_CASE("output is identical across worker counts and formats stay well formed") {
  for (const char* fmt : {"json", "csv", "text"}) {
    const auto one = invoke({"verify-theorem1", "--p", "5,7", "--workers", "1", "--format", fmt});
    const auto many = invoke({"verify-theorem1", "--p", "5,7", "--workers", "7", "--format", fmt});
    CHECK(one.code == kAllPass);
    CHECK(one.out == many.out);
  }
  const auto a = invoke({"search", "--family", "cooper", "--c=-30..30", "--d=-5..5", "--workers", "1"});
  const auto b = invoke({"search", "--family", "cooper", "--c=-30..30", "--d=-5..5", "--workers", "5"});
  CHECK(a.out == b.out);
  CHECK(a.out.find("known:gamma") != std::string::npos);

  const auto csv = invoke({"verify-gauss", "--p", "5", "--n", "1", "--m", "1", "--format", "csv"});
  std::istringstream in(csv.out);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("command,p,n,m,r,s,t,", 0) == 0);
  int rows = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("#", 0) != 0) ++rows;
  }
  CHECK(rows == 9);
}

TEST_CASE("consistency records carry every (p, m) entry") {
  const auto r = invoke({"consistency", "--n", "1", "--rst", "2,2,0", "--rst", "4,0,0"});
  CHECK(r.code == kAllPass);
  const auto recs = lines(r.out);
  REQUIRE(recs.size() == 3);
  CHECK(recs[0]["entries"].size() == 8);
  CHECK(recs[1]["correction"] == "0");
  for (const auto& e : recs[0]["entries"]) CHECK(e["status"] == "agree");
}
