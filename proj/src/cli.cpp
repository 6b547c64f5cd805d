#include "gcl/cli.hpp"

#include <cstdlib>
#include <functional>
#include <thread>

#include "CLI11.hpp"
#include "gcl/parallel.hpp"
#include "json.hpp"

namespace gcl::cli {

namespace {

using Json = nlohmann::ordered_json;

long parse_long(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw UsageError("invalid integer '" + s + "' in " + what);
  }
  if (used != s.size()) throw UsageError("invalid integer '" + s + "' in " + what);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<long> parse_longs(const std::string& s, std::size_t arity, const std::string& what) {
  const auto parts = split(s, ',');
  if (parts.size() != arity) throw UsageError(what + " needs " + std::to_string(arity) + " comma-separated integers");
  std::vector<long> out;
  for (const auto& p : parts) out.push_back(parse_long(p, what));
  return out;
}

IntRange parse_range(const std::string& s) {
  const auto dots = s.find("..", 1);
  if (dots == std::string::npos) {
    const long v = parse_long(s, "range");
    return {v, v};
  }
  const IntRange r{parse_long(s.substr(0, dots), "range"), parse_long(s.substr(dots + 2), "range")};
  if (r.hi < r.lo) throw UsageError("empty range '" + s + "'");
  return r;
}

Json valuation_json(const Valuation& v) { return v.is_infinite() ? Json("inf") : Json(v.value()); }

const char* status_of(bool pass) { return pass ? "pass" : "fail"; }

// ---- output ---------------------------------------------------------------

std::vector<std::string> columns_for(Command c) {
  switch (c) {
    case Command::Seq:
      return {"command", "spec", "n", "value", "recurrence", "formula", "integral", "agree", "pass", "status", "error"};
    case Command::VerifyLemma:
      return {"command", "lemma", "p", "m", "l", "n", "k", "a", "b", "c", "r", "s", "t", "modulus", "lhs", "rhs",
              "required_exponent", "achieved_exponent", "precision_exponent", "bernoulli_source", "pass", "status",
              "error"};
    case Command::VerifyGauss:
    case Command::VerifyTheorem1:
      return {"command", "p", "n", "m", "r", "s", "t", "index_high", "index_low", "a_high", "a_low", "modulus",
              "correction", "bernoulli_residue", "bernoulli_source", "required_exponent", "achieved_exponent", "pass",
              "status", "error"};
    case Command::Consistency:
      return {"command", "n", "r", "s", "t", "correction", "entries", "agree", "skipped_entries", "pass", "status",
              "error"};
    case Command::Search:
      return {"command", "family", "params", "horizon", "classification", "first_terms", "evidence_only", "pass",
              "status"};
  }
  return {};
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string text_value(const Json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    return s.find(' ') == std::string::npos ? s : v.dump();
  }
  return v.dump();
}

class Writer {
 public:
  Writer(Format format, Command command, std::ostream& out)
      : format_(format), command_(command), out_(out), columns_(columns_for(command)) {}

  void record(const Json& r) {
    const std::string status = r.value("status", "fail");
    ++total_;
    if (status == "pass") {
      ++pass_;
    } else if (status == "skipped") {
      ++skipped_;
    } else {
      ++fail_;
    }
    switch (format_) {
      case Format::Json:
        out_ << r.dump() << '\n';
        break;
      case Format::Csv:
        if (!header_written_) {
          for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
          out_ << '\n';
          header_written_ = true;
        }
        for (std::size_t i = 0; i < columns_.size(); ++i) {
          out_ << (i ? "," : "") << (r.contains(columns_[i]) ? csv_cell(r[columns_[i]]) : "");
        }
        out_ << '\n';
        break;
      case Format::Text: {
        bool first = true;
        for (const auto& [key, value] : r.items()) {
          if (value.is_null() || key == "command") continue;
          out_ << (first ? "" : " ") << key << '=' << text_value(value);
          first = false;
        }
        out_ << '\n';
        break;
      }
    }
  }

  void summary(Json extra = Json::object()) {
    Json s;
    s["command"] = to_string(command_);
    s["total"] = total_;
    s["pass"] = pass_;
    s["fail"] = fail_;
    s["skipped"] = skipped_;
    for (const auto& [key, value] : extra.items()) s[key] = value;
    if (format_ == Format::Json) {
      out_ << Json{{"summary", s}}.dump() << '\n';
      return;
    }
    out_ << (format_ == Format::Csv ? "# summary" : "summary");
    for (const auto& [key, value] : s.items()) out_ << ' ' << key << '=' << text_value(value);
    out_ << '\n';
  }

  int exit_code() const { return fail_ == 0 ? kAllPass : kSomeFail; }

 private:
  Format format_;
  Command command_;
  std::ostream& out_;
  std::vector<std::string> columns_;
  bool header_written_ = false;
  long total_ = 0, pass_ = 0, fail_ = 0, skipped_ = 0;
};

// Runs `body(task)` for every task and writes the records in task order. A
// failing task becomes an error record built from `params(task)`.
template <class Task, class Params, class Body>
void stream_tasks(const std::vector<Task>& tasks, unsigned workers, Writer& writer, const char* command,
                  Params params, Body body) {
  parallel_ordered(
      tasks.size(), workers,
      [&](std::size_t i) -> Json {
        try {
          return body(tasks[i]);
        } catch (const std::exception& e) {
          Json r = params(tasks[i]);
          r["error"] = e.what();
          r["pass"] = false;
          r["status"] = "error";
          return r;
        }
      },
      [&](std::size_t, Json&& r) {
        Json full;
        full["command"] = command;
        for (auto& [key, value] : r.items()) full[key] = std::move(value);
        writer.record(full);
      });
}

// ---- validation -----------------------------------------------------------

std::vector<std::uint64_t> checked_primes(const std::vector<long>& ps, const std::vector<std::uint64_t>& fallback) {
  if (ps.empty()) return fallback;
  std::vector<std::uint64_t> out;
  for (long p : ps) {
    if (p < 5 || !is_prime(static_cast<std::uint64_t>(p))) {
      throw UsageError("--p values must be primes >= 5, got " + std::to_string(p));
    }
    out.push_back(static_cast<std::uint64_t>(p));
  }
  return out;
}

std::vector<unsigned> checked_unsigned(const std::vector<long>& xs, std::vector<unsigned> fallback, long min,
                                       const char* flag) {
  if (xs.empty()) return fallback;
  std::vector<unsigned> out;
  for (long x : xs) {
    if (x < min) throw UsageError(std::string(flag) + " values must be >= " + std::to_string(min));
    out.push_back(static_cast<unsigned>(x));
  }
  return out;
}

std::vector<OssParams> checked_rst(const std::vector<OssParams>& rows, std::vector<OssParams> fallback) {
  return rows.empty() ? fallback : rows;
}

// ---- seq ------------------------------------------------------------------

bool has_recurrence(const SequenceSpec& spec) {
  if (const auto* oss = std::get_if<OssParams>(&spec)) return special_case_row(*oss).has_value();
  return true;
}

int run_seq(const RunConfig& cfg, Writer& w) {
  if (!cfg.spec) throw UsageError("seq needs --spec");
  if (cfg.count == 0) throw UsageError("--count must be positive");
  if (cfg.count - 1 > cfg.max_index) throw UsageError("--count exceeds --max-index");
  const SequenceSpec spec = *cfg.spec;
  std::vector<Rational> rec;
  if (has_recurrence(spec)) rec = terms_by_recurrence(spec, cfg.count);
  const bool formula = has_closed_form(spec);

  std::vector<std::size_t> indices(cfg.count);
  for (std::size_t i = 0; i < cfg.count; ++i) indices[i] = i;
  const std::string name = to_string(spec);
  auto params = [&](std::size_t n) { return Json{{"spec", name}, {"n", n}}; };
  stream_tasks(indices, cfg.workers, w, "seq", params, [&](std::size_t n) {
    Json r = params(n);
    std::optional<Integer> closed;
    if (formula) {
      const auto* oss = std::get_if<OssParams>(&spec);
      closed = oss ? oss_term_at(*oss, n, cfg.max_index) : term_by_formula(spec, n);
    }
    const bool have_rec = !rec.empty();
    r["value"] = closed ? closed->get_str() : rec[n].to_string();
    r["recurrence"] = have_rec ? Json(rec[n].to_string()) : Json();
    r["formula"] = closed ? Json(closed->get_str()) : Json();
    r["integral"] = have_rec ? rec[n].is_integer() : true;
    const bool agree = !(have_rec && closed) || rec[n] == Rational(*closed);
    r["agree"] = (have_rec && closed) ? Json(agree) : Json();
    r["pass"] = agree;
    r["status"] = status_of(agree);
    return r;
  });
  w.summary();
  return w.exit_code();
}

// ---- verify-lemma ---------------------------------------------------------

bool is_nested(LemmaId id) {
  return id == LemmaId::Nested_b14 || id == LemmaId::Nested_b15 || id == LemmaId::Nested_b16 ||
         id == LemmaId::Nested_b17;
}

Json lemma_params(const LemmaTask& t) {
  Json r;
  r["lemma"] = std::string(to_string(t.id));
  r["p"] = t.p;
  switch (t.id) {
    case LemmaId::Granville_b1:
      r["n"] = t.n;
      r["k"] = t.k;
      break;
    case LemmaId::Shift_b2:
      r["m"] = t.m;
      r["n"] = t.n;
      r["a"] = t.a;
      r["b"] = t.b;
      r["c"] = t.c;
      r["r"] = t.r;
      r["s"] = t.s;
      r["t"] = t.t;
      break;
    case LemmaId::Block_b7:
    case LemmaId::Block_b8:
      r["m"] = t.m;
      r["n"] = t.n;
      break;
    case LemmaId::Nested_b14:
    case LemmaId::Nested_b15:
    case LemmaId::Nested_b16:
    case LemmaId::Nested_b17:
      r["l"] = t.l;
      r["n"] = t.n;
      break;
    default:
      r["m"] = t.m;
      break;
  }
  return r;
}

std::vector<LemmaTask> lemma_tasks(const RunConfig& cfg) {
  std::vector<LemmaId> ids = cfg.lemmas;
  if (ids.empty()) ids.assign(std::begin(kAllLemmas), std::end(kAllLemmas));
  const auto primes = checked_primes(cfg.p, default_primes());
  const auto ms = checked_unsigned(cfg.m, {1, 2}, 1, "--m");
  const auto ls = checked_unsigned(cfg.l, {0, 1, 2}, 0, "--l");
  const auto ns = checked_unsigned(cfg.n, {0, 1, 2}, 0, "--n");

  std::vector<LemmaTask> tasks;
  for (LemmaId id : ids) {
    switch (id) {
      case LemmaId::Granville_b1: {
        const auto ps = checked_primes(cfg.p, {5, 7, 11});
        const auto bn = checked_unsigned(cfg.n, {2, 3, 4, 5, 6}, 0, "--n");
        for (auto p : ps) {
          for (unsigned n : bn) {
            if (cfg.k.empty()) {
              for (unsigned k = 1; k < n; ++k) tasks.push_back({.id = id, .p = p, .n = n, .k = k});
            } else {
              for (unsigned k : checked_unsigned(cfg.k, {}, 0, "--k")) tasks.push_back({.id = id, .p = p, .n = n, .k = k});
            }
          }
        }
        break;
      }
      case LemmaId::Shift_b2: {
        const bool explicit_tuple = !cfg.a.empty() || !cfg.b.empty() || !cfg.c.empty() || !cfg.rst.empty();
        if (!explicit_tuple) {
          // Seeded random tuples, restricted to the requested p, m and n.
          for (const auto& t : default_lemma_grid(id, cfg.random_b2, cfg.seed)) {
            auto keep = [](const auto& xs, long v) { return xs.empty() || std::find(xs.begin(), xs.end(), v) != xs.end(); };
            if (keep(cfg.p, static_cast<long>(t.p)) && keep(cfg.m, t.m) && keep(cfg.n, t.n)) tasks.push_back(t);
          }
          for (long p : cfg.p) checked_primes({p}, {});
          break;
        }
        if (cfg.a.empty() || cfg.b.empty() || cfg.c.empty() || cfg.rst.empty()) {
          throw UsageError("b2 with explicit tuples needs --a, --b, --c and --rst");
        }
        const auto bn = checked_unsigned(cfg.n, {1, 2}, 1, "--n");
        for (auto p : primes) {
          for (unsigned m : ms) {
            for (unsigned n : bn) {
              for (unsigned a : checked_unsigned(cfg.a, {}, 0, "--a")) {
                for (unsigned b : checked_unsigned(cfg.b, {}, 0, "--b")) {
                  for (unsigned c : checked_unsigned(cfg.c, {}, 0, "--c")) {
                    for (const auto& q : cfg.rst) {
                      tasks.push_back(
                          {.id = id, .p = p, .m = m, .n = n, .a = a, .b = b, .c = c, .r = q.r, .s = q.s, .t = q.t});
                    }
                  }
                }
              }
            }
          }
        }
        break;
      }
      case LemmaId::Block_b7:
      case LemmaId::Block_b8:
        for (auto p : primes) {
          for (unsigned m : ms) {
            for (unsigned n : ns) tasks.push_back({.id = id, .p = p, .m = m, .n = n});
          }
        }
        break;
      default:
        if (is_nested(id)) {
          for (auto p : primes) {
            for (unsigned l : ls) {
              for (unsigned n : ns) tasks.push_back({.id = id, .p = p, .l = l, .n = n});
            }
          }
        } else {
          for (auto p : primes) {
            for (unsigned m : ms) tasks.push_back({.id = id, .p = p, .m = m});
          }
        }
        break;
    }
  }
  if (tasks.empty()) throw UsageError("the lemma grid is empty");
  return tasks;
}

int run_lemmas(const RunConfig& cfg, Writer& w) {
  const auto tasks = lemma_tasks(cfg);
  stream_tasks(tasks, cfg.workers, w, "verify-lemma", lemma_params, [](const LemmaTask& t) {
    const auto rep = verify_lemma(t);
    Json r = lemma_params(t);
    r["modulus"] = t.p >= 5 ? PrimePowerModulus(t.p, static_cast<int>(rep.required_exponent)).to_string() : "";
    r["lhs"] = to_string(rep.lhs);
    r["rhs"] = to_string(rep.rhs);
    r["required_exponent"] = rep.required_exponent;
    r["achieved_exponent"] = valuation_json(rep.achieved_exponent);
    r["precision_exponent"] = valuation_json(rep.precision_exponent);
    r["bernoulli_source"] = t.id == LemmaId::Shift_b2 ? Json() : Json(to_string(rep.bernoulli_source));
    r["pass"] = rep.pass;
    r["status"] = status_of(rep.pass);
    return r;
  });
  w.summary();
  return w.exit_code();
}

// ---- verify-gauss / verify-theorem1 ---------------------------------------

Json congruence_params(const CongruenceTask& t) {
  return Json{{"p", t.p}, {"n", t.n}, {"m", t.m}, {"r", t.rst.r}, {"s", t.rst.s}, {"t", t.rst.t}};
}

std::vector<CongruenceTask> congruence_tasks(const RunConfig& cfg, CongruenceMode mode) {
  const auto primes = checked_primes(cfg.p, default_primes());
  const auto ns = checked_unsigned(cfg.n, {1, 2}, 1, "--n");
  const auto ms = checked_unsigned(cfg.m, {1, 2}, 1, "--m");
  const auto rows = checked_rst(cfg.rst, default_rst_rows());
  std::vector<CongruenceTask> tasks;
  for (auto p : primes) {
    for (unsigned n : ns) {
      for (unsigned m : ms) {
        const std::uint64_t top = ipow(p, m) * n;
        if (top > cfg.max_index) {
          throw UsageError("index " + std::to_string(top) + " = n p^m exceeds --max-index " +
                           std::to_string(cfg.max_index));
        }
        for (const auto& row : rows) tasks.push_back({p, n, m, row, mode});
      }
    }
  }
  return tasks;
}

int run_congruence(const RunConfig& cfg, Writer& w, CongruenceMode mode) {
  const auto tasks = congruence_tasks(cfg, mode);
  const char* command = mode == CongruenceMode::Gauss3 ? "verify-gauss" : "verify-theorem1";
  stream_tasks(tasks, cfg.workers, w, command, congruence_params, [&](const CongruenceTask& t) {
    const auto rep = verify_congruence(t, cfg.max_index);
    Json r = congruence_params(t);
    r["index_high"] = ipow(t.p, t.m) * t.n;
    r["index_low"] = ipow(t.p, t.m - 1) * t.n;
    r["a_high"] = rep.a_high.get_str();
    r["a_low"] = rep.a_low.get_str();
    r["modulus"] = PrimePowerModulus(t.p, static_cast<int>(rep.required_exponent)).to_string();
    r["correction"] = rep.correction ? Json(rep.correction->to_string()) : Json();
    r["bernoulli_residue"] = rep.bernoulli ? Json(rep.bernoulli->residue.to_string()) : Json();
    r["bernoulli_source"] = rep.bernoulli ? Json(to_string(rep.bernoulli->source)) : Json();
    r["required_exponent"] = rep.required_exponent;
    r["achieved_exponent"] = valuation_json(rep.achieved_exponent);
    r["pass"] = rep.pass;
    r["status"] = status_of(rep.pass);
    return r;
  });
  w.summary();
  return w.exit_code();
}

// ---- consistency ----------------------------------------------------------

struct ConsistencyTask {
  unsigned n;
  OssParams rst;
};

int run_consistency(const RunConfig& cfg, Writer& w) {
  const auto primes = checked_primes(cfg.p, default_primes());
  const auto ns = checked_unsigned(cfg.n, {1, 2}, 0, "--n");
  const auto ms = checked_unsigned(cfg.m, {1, 2}, 1, "--m");
  const auto rows = checked_rst(cfg.rst, default_rst_rows());
  for (auto p : primes) {
    for (unsigned n : ns) {
      for (unsigned m : ms) {
        if (ipow(p, m) * n > cfg.max_index) throw UsageError("n p^m exceeds --max-index");
      }
    }
  }
  std::vector<ConsistencyTask> tasks;
  for (unsigned n : ns) {
    for (const auto& row : rows) tasks.push_back({n, row});
  }
  auto params = [](const ConsistencyTask& t) {
    return Json{{"n", t.n}, {"r", t.rst.r}, {"s", t.rst.s}, {"t", t.rst.t}};
  };
  stream_tasks(tasks, cfg.workers, w, "consistency", params, [&](const ConsistencyTask& t) {
    const auto rep = consistency_sweep(t.n, t.rst, primes, ms, cfg.max_index);
    Json r = params(t);
    r["correction"] = rep.correction.to_string();
    Json entries = Json::array();
    long agree = 0, skipped = 0;
    for (const auto& e : rep.entries) {
      if (e.status == ConsistencyStatus::Agree) ++agree;
      if (e.status == ConsistencyStatus::Skipped) ++skipped;
      entries.push_back(Json{{"p", e.p},
                             {"m", e.m},
                             {"status", to_string(e.status)},
                             {"extracted", e.extracted ? Json(e.extracted->to_string()) : Json()},
                             {"expected", e.expected ? Json(e.expected->to_string()) : Json()},
                             {"bernoulli_source", to_string(e.bernoulli_source)}});
    }
    r["entries"] = std::move(entries);
    r["agree"] = agree;
    r["skipped_entries"] = skipped;
    r["pass"] = rep.consistent;
    const bool all_skipped = !rep.entries.empty() && skipped == static_cast<long>(rep.entries.size());
    r["status"] = all_skipped ? "skipped" : status_of(rep.consistent);
    return r;
  });
  w.summary();
  return w.exit_code();
}

// ---- search ---------------------------------------------------------------

const char* const kZagierNames[] = {"A", "B", "lambda"};
const char* const kCooperNames[] = {"a", "b", "c", "d"};

int run_search_command(const RunConfig& cfg, Writer& w) {
  SearchBox box = cfg.family == SearchFamily::Zagier ? default_zagier_box() : default_cooper_box();
  if (!cfg.ranges.empty()) {
    if (cfg.ranges.size() != box.ranges.size()) throw UsageError("wrong number of search ranges for the family");
    for (std::size_t i = 0; i < box.ranges.size(); ++i) {
      if (cfg.ranges[i]) box.ranges[i] = *cfg.ranges[i];
    }
  }
  if (cfg.horizon) box.horizon = *cfg.horizon;
  if (box.horizon < 10) throw UsageError("--horizon must be >= 10");
  if (box.candidates() > cfg.budget) {
    throw UsageError("search box holds " + std::to_string(box.candidates()) + " tuples, over the budget of " +
                     std::to_string(cfg.budget));
  }
  const auto result = run_search(box, {cfg.budget, cfg.workers});
  const auto* names = cfg.family == SearchFamily::Zagier ? kZagierNames : kCooperNames;
  for (const auto& hit : result.hits) {
    Json r;
    r["command"] = "search";
    r["family"] = to_string(cfg.family);
    Json params;
    for (std::size_t i = 0; i < hit.params.size(); ++i) params[names[i]] = hit.params[i];
    r["params"] = std::move(params);
    r["horizon"] = box.horizon;
    r["classification"] = to_string(hit.classification);
    Json terms = Json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(10, hit.first_terms.size()); ++i) {
      terms.push_back(hit.first_terms[i].get_str());
    }
    r["first_terms"] = std::move(terms);
    r["evidence_only"] = result.evidence_only;
    r["pass"] = true;
    r["status"] = "pass";
    w.record(r);
  }
  w.summary(Json{{"candidates", result.candidates}, {"evidence_only", result.evidence_only}});
  return w.exit_code();
}

// ---- environment ----------------------------------------------------------

std::optional<unsigned long> env_number(const char* name) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return std::nullopt;
  const long v = parse_long(raw, name);
  if (v <= 0) throw UsageError(std::string(name) + " must be positive");
  return static_cast<unsigned long>(v);
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::Seq:
      return "seq";
    case Command::VerifyLemma:
      return "verify-lemma";
    case Command::VerifyGauss:
      return "verify-gauss";
    case Command::VerifyTheorem1:
      return "verify-theorem1";
    case Command::Consistency:
      return "consistency";
    case Command::Search:
      return "search";
  }
  return "?";
}

std::vector<long> parse_grid(const std::string& text) {
  std::vector<long> out;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) throw UsageError("empty entry in grid '" + text + "'");
    const auto r = parse_range(part);
    if (r.size() > 100000) throw UsageError("grid range '" + part + "' is too large");
    for (long v = r.lo; v <= r.hi; ++v) out.push_back(v);
  }
  return out;
}

OssParams parse_rst(const std::string& text) {
  const auto v = parse_longs(text, 3, "--rst");
  if (v[0] < 2 || v[1] < 0 || v[2] < 0) throw UsageError("--rst needs r >= 2 and s, t >= 0");
  return {static_cast<unsigned>(v[0]), static_cast<unsigned>(v[1]), static_cast<unsigned>(v[2])};
}

SequenceSpec parse_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--spec must look like kind:params, got '" + text + "'");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (kind == "named") {
    const auto id = named_from_string(rest);
    if (!id) throw UsageError("unknown named sequence '" + rest + "'");
    return Named{*id};
  }
  if (kind == "oss") return parse_rst(rest);
  if (kind == "zagier") {
    const auto v = parse_longs(rest, 3, "zagier spec");
    return ZagierParams{v[0], v[1], v[2]};
  }
  if (kind == "az") {
    const auto v = parse_longs(rest, 3, "az spec");
    return AlmkvistZudilinParams{v[0], v[1], v[2]};
  }
  if (kind == "cooper") {
    const auto v = parse_longs(rest, 4, "cooper spec");
    return CooperParams{v[0], v[1], v[2], v[3]};
  }
  throw UsageError("unknown spec kind '" + kind + "'");
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.workers == 0) throw UsageError("--workers must be positive");
    if (config.max_index == 0) throw UsageError("--max-index must be positive");
    if (config.budget == 0) throw UsageError("--budget must be positive");
    Writer writer(config.format, config.command, out);
    switch (config.command) {
      case Command::Seq:
        return run_seq(config, writer);
      case Command::VerifyLemma:
        return run_lemmas(config, writer);
      case Command::VerifyGauss:
        return run_congruence(config, writer, CongruenceMode::Gauss3);
      case Command::VerifyTheorem1:
        return run_congruence(config, writer, CongruenceMode::Theorem1);
      case Command::Consistency:
        return run_consistency(config, writer);
      case Command::Search:
        return run_search_command(config, writer);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gauss congruence laboratory: sequences, lemma and theorem checks, sporadic searches", "gcl"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "json";
  std::optional<unsigned> workers;
  std::optional<std::size_t> max_index;
  std::uint64_t budget = cfg.budget;
  std::string spec;
  std::vector<std::string> ids, rst;
  std::string p, n, m, l, k, a, b, c;
  std::string family = "zagier";
  std::string zA, zB, zLambda, ca, cb, cc, cd;
  std::optional<std::size_t> horizon;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--workers", workers, "worker threads (default GCL_WORKERS or hardware threads)");
    sub->add_option("--max-index", max_index, "largest sequence index computed (default GCL_MAX_INDEX or 5000)");
    sub->add_option("--budget", budget, "largest search box in tuples");
  };
  auto grid_flags = [&](CLI::App* sub, bool with_l) {
    sub->add_option("--p", p, "primes, e.g. 5,7 or 5..13");
    sub->add_option("--n", n, "n values");
    sub->add_option("--m", m, "m values");
    if (with_l) sub->add_option("--l", l, "l values");
    sub->add_option("--rst", rst, "r,s,t triple, repeatable");
  };

  auto* seq = app.add_subcommand("seq", "print sequence terms by recurrence and closed form");
  seq->add_option("--spec", spec, "named:X, oss:r,s,t, zagier:A,B,L, az:a,b,c or cooper:a,b,c,d")->required();
  seq->add_option("--count", cfg.count, "number of terms");
  common(seq);

  auto* lemma = app.add_subcommand("verify-lemma", "check the harmonic and binomial lemmas");
  lemma->add_option("--id", ids, "lemma ids (b1 b2 b7 b8 b9 b12 b13 b14 b15 b16 b17 b23), comma separated or repeated");
  grid_flags(lemma, true);
  lemma->add_option("--k", k, "k values (b1)");
  lemma->add_option("--a", a, "a values (b2)");
  lemma->add_option("--b", b, "b values (b2)");
  lemma->add_option("--c", c, "c values (b2)");
  lemma->add_option("--random-b2", cfg.random_b2, "random b2 tuples per (p, m)");
  lemma->add_option("--seed", cfg.seed, "seed for the random b2 tuples");
  common(lemma);

  auto* gauss = app.add_subcommand("verify-gauss", "check A_{np^m} = A_{np^{m-1}} mod p^{3m}");
  grid_flags(gauss, false);
  common(gauss);
  auto* thm = app.add_subcommand("verify-theorem1", "check the Bernoulli-corrected congruence mod p^{3m+1}");
  grid_flags(thm, false);
  common(thm);
  auto* cons = app.add_subcommand("consistency", "check that the correction is the same for every p and m");
  grid_flags(cons, false);
  common(cons);

  auto* search = app.add_subcommand("search", "integrality search over a parameter box");
  search->add_option("--family", family, "zagier or cooper")->check(CLI::IsMember({"zagier", "cooper"}));
  search->add_option("--A", zA, "zagier A range, lo..hi");
  search->add_option("--B", zB, "zagier B range (use --B=-100..100 for negative bounds)");
  search->add_option("--lambda", zLambda, "zagier lambda range");
  search->add_option("--a", ca, "cooper a range");
  search->add_option("--b", cb, "cooper b range");
  search->add_option("--c", cc, "cooper c range");
  search->add_option("--d", cd, "cooper d range");
  search->add_option("--horizon", horizon, "number of terms that must be integral");
  common(search);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kAllPass : kUsageError;
  }

  try {
    cfg.format = format == "csv" ? Format::Csv : format == "text" ? Format::Text : Format::Json;
    cfg.budget = budget;
    const auto env_workers = env_number("GCL_WORKERS");
    const auto env_index = env_number("GCL_MAX_INDEX");
    cfg.workers = workers ? *workers
                          : env_workers ? static_cast<unsigned>(*env_workers)
                                        : std::max(1u, std::thread::hardware_concurrency());
    cfg.max_index = max_index ? *max_index : env_index ? *env_index : kDefaultMaxIndex;

    auto grid = [](const std::string& s) { return s.empty() ? std::vector<long>{} : parse_grid(s); };
    cfg.p = grid(p);
    cfg.n = grid(n);
    cfg.m = grid(m);
    cfg.l = grid(l);
    cfg.k = grid(k);
    cfg.a = grid(a);
    cfg.b = grid(b);
    cfg.c = grid(c);
    for (const auto& s : rst) cfg.rst.push_back(parse_rst(s));

    if (seq->parsed()) {
      cfg.command = Command::Seq;
      cfg.spec = parse_spec(spec);
    } else if (lemma->parsed()) {
      cfg.command = Command::VerifyLemma;
      for (const auto& entry : ids) {
        for (const auto& name : split(entry, ',')) {
          const auto id = lemma_from_string(name);
          if (!id) throw UsageError("unknown lemma id '" + name + "'");
          cfg.lemmas.push_back(*id);
        }
      }
    } else if (gauss->parsed()) {
      cfg.command = Command::VerifyGauss;
    } else if (thm->parsed()) {
      cfg.command = Command::VerifyTheorem1;
    } else if (cons->parsed()) {
      cfg.command = Command::Consistency;
    } else {
      cfg.command = Command::Search;
      cfg.family = family == "cooper" ? SearchFamily::Cooper : SearchFamily::Zagier;
      auto range = [](const std::string& s) { return s.empty() ? std::optional<IntRange>{} : parse_range(s); };
      if (cfg.family == SearchFamily::Zagier) {
        if (!ca.empty() || !cb.empty() || !cc.empty() || !cd.empty()) {
          throw UsageError("--a, --b, --c, --d belong to the cooper family");
        }
        cfg.ranges = {range(zA), range(zB), range(zLambda)};
      } else {
        if (!zA.empty() || !zB.empty() || !zLambda.empty()) {
          throw UsageError("--A, --B, --lambda belong to the zagier family");
        }
        cfg.ranges = {range(ca), range(cb), range(cc), range(cd)};
      }
      cfg.horizon = horizon;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return execute(cfg, out, err);
}

}  // namespace gcl::cli
