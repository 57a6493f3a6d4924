// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include "properties.hpp"

#include "thtc/cli.hpp"
#include "thtc/kamp.hpp"
#include "thtc/parser.hpp"
#include "thtc/semantics.hpp"

#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace {

using namespace thtc;
using namespace thtc::testing;
using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSeed = 20241014;

constexpr std::size_t kLawCases = 1000;
constexpr std::size_t kConservativityCases = 500;
constexpr std::size_t kKampCases = 500;
constexpr std::size_t kConstraintCases = 500;
constexpr std::size_t kEngineCases = 200;

constexpr double kRadarSeconds = 1.0;
constexpr double kWorkedSeconds = 0.1;
constexpr double kLawSeconds = 30.0;
constexpr double kKampSeconds = 60.0;
constexpr double kEngineSeconds = 120.0;

std::string read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const std::string& rel) { return std::string(THTC_DATA_DIR) + "/" + rel; }

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    } else if (!cond) {
      detail += "; " + what;
    }
  }
};

void require_properties(Outcome& out, const std::vector<PropertyResult>& results, std::size_t minimum) {
  std::string summary;
  for (const auto& r : results) {
    if (!summary.empty()) summary += ", ";
    summary += r.name + " " + std::to_string(r.cases) + " cases (" + std::to_string(r.positives) + " positive)";
    out.check(r.cases >= minimum, r.name + " ran only " + std::to_string(r.cases) + " cases");
    out.check(r.ok(), r.name + ": " + std::to_string(r.failures) + " counterexamples, first:\n" + r.counterexample);
  }
  if (out.ok) out.detail = summary;
}

Outcome radar() {
  Outcome out;
  std::ostringstream so, se;
  int code = cli::run({"demo", "radar"}, so, se);
  out.check(code == 0, "demo exit code " + std::to_string(code));
  std::string text = so.str();
  auto split = text.find("\n\n");
  out.check(split != std::string::npos, "no document after the table");
  if (!out.ok) return out;
  auto doc = nlohmann::json::parse(text.substr(split + 2));
  out.check(doc["models"].size() == 1, "expected exactly one model");
  if (!out.ok) return out;
  HTcTrace m = parse_trace(doc["models"][0].dump());
  out.check(m.here() == m.there(), "model is not total");
  const Trace& t = m.there();
  out.check(t.length() == 9, "horizon is not 9");
  if (!out.ok) return out;
  const std::vector<std::string> s{"80", "80", "80", "80", "80", "91.35", "91.35", "89.049", "89.049"};
  const std::vector<std::string> p{"0", "80", "160", "240", "320", "400", "491.35", "582.7", "671.749"};
  for (std::size_t i = 0; i < 9; ++i) {
    auto at = [&](const char* x) { return t.at(i).get(x); };
    auto is = [&](const char* x, const std::string& v) {
      out.check(at(x) == *Value::parse(v), std::string(x) + " at " + std::to_string(i) + " is " +
                                               (at(x).defined() ? at(x).to_string() : "u") + ", expected " + v);
    };
    is("s", s[i]);
    is("p", p[i]);
    is("rdlimit", "90");
    is("rdpos", "400");
    if (i == 4) is("acc", "11.35");
    else if (i == 6) is("acc", "-2.301");
    else out.check(!at("acc").defined(), "acc defined at " + std::to_string(i));
    if (i == 5) out.check(at("fine").is_truth(), "fine not true at 5");
    else out.check(!at("fine").defined(), "fine defined at " + std::to_string(i));
    out.check(t.at(i).defined_count() == 4 + (i == 4 || i == 6) + (i == 5), "extra entries at " + std::to_string(i));
  }
  if (out.ok) out.detail = "9 states equal the table exactly";
  return out;
}

Outcome worked_examples() {
  Outcome out;
  HTcTrace m = parse_trace(read(data("traces/example.trace")));
  auto formula = [&](const char* f) { return parse_formula(read(data(std::string("formulas/") + f))); };
  Formula conj = formula("conjunction.thtc");
  Formula prev = formula("prev_below_7.thtc");
  Formula yy = formula("y_defined.thtc");
  out.check(satisfies(m, 0, conj), "(x = 4) & (x@1 < y@3) not satisfied at 0");
  out.check(!satisfies(m, 0, prev), "prev(x) < 7 satisfied at 0");
  out.check(satisfies(m, 1, prev), "prev(x) < 7 not satisfied at 1");
  out.check(satisfies(m, 3, yy), "y = y not satisfied at 3");
  out.check(!satisfies(m, 0, yy), "y = y satisfied at 0");
  HTcTrace blank = parse_trace(read(data("traces/blank2.trace")));
  out.check(satisfies(blank, 0, formula("not_changed.thtc")), "not (next(x) != x) fails on the blank trace");
  out.check(!satisfies(blank, 0, parse_formula("next(x) = x")), "next(x) = x holds on the blank trace");
  if (out.ok) out.detail = "7 judgments";
  return out;
}

Outcome ht_laws() {
  Outcome out;
  require_properties(out,
                     {persistence(kSeed, kLawCases), negation(kSeed + 1, kLawCases),
                      derived_coherence(kSeed + 2, kLawCases), strict_shortcut(kSeed + 3, kLawCases)},
                     kLawCases);
  return out;
}

Outcome conservativity() {
  Outcome out;
  require_properties(out,
                     {htc_coincidence(kSeed + 4, kConservativityCases), delta_satisfaction(kSeed + 5, kConservativityCases),
                      delta_equilibrium(kSeed + 6, kConservativityCases)},
                     kConservativityCases);
  return out;
}

Outcome kamp() {
  Outcome out;
  std::string golden = read(std::string(THTC_GOLDEN_DIR) + "/always_once.fo");
  while (!golden.empty() && golden.back() == '\n') golden.pop_back();
  std::string got = export_fo(st_translate(parse_formula(read(data("formulas/always_once.thtc")))).formula);
  out.check(got == golden, "worked example translation differs from the golden file: " + got);
  Outcome props;
  require_properties(props, {kamp_satisfaction(kSeed + 7, kKampCases), kamp_equilibrium(kSeed + 8, kKampCases)},
                     kKampCases);
  out.check(props.ok, props.detail);
  if (out.ok) out.detail = "golden match, " + props.detail;
  return out;
}

Outcome constraint_laws() {
  Outcome out;
  require_properties(out,
                     {complement_law(kSeed + 9, kConstraintCases), df_law(kSeed + 10, kConstraintCases),
                      rule_expansion(kSeed + 11, kConstraintCases)},
                     kConstraintCases);
  return out;
}

Outcome engines() {
  Outcome out;
  require_properties(out, {engine_agreement(kSeed + 12, kEngineCases), stability_oracle(kSeed + 13, kEngineCases)},
                     kEngineCases);
  return out;
}

struct Criterion {
  int number;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "radar reproduction", kRadarSeconds, radar},
      {2, "worked examples", kWorkedSeconds, worked_examples},
      {3, "HT laws", kLawSeconds, ht_laws},
      {4, "conservativity", 0, conservativity},
      {5, "ST translation", kKampSeconds, kamp},
      {6, "constraint-fragment laws", 0, constraint_laws},
      {7, "engine equivalence", kEngineSeconds, engines},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds >= c.limit_seconds) {
      o.ok = false;
      o.detail += "; took " + std::to_string(seconds) + " s, limit " + std::to_string(c.limit_seconds) + " s";
    }
    failed += !o.ok;
    std::ostringstream time;
    time.precision(3);
    time << std::fixed << seconds;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << c.number << " (" << c.name << ") in " << time.str()
              << " s: " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
