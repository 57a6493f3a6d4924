#include "thtc/cli.hpp"
#include "thtc/parser.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace thtc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return std::string(THTC_DATA_DIR) + "/" + rel; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("thtc_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, CheckWorkedExample) {
  std::string trace = data("traces/example.trace");
  Outcome yes = run({"check", data("formulas/conjunction.thtc"), trace, "--at", "0"});
  EXPECT_EQ(yes.code, cli::kOk) << yes.err;
  EXPECT_EQ(nlohmann::json::parse(yes.out)["satisfied"], true);
  Outcome no = run({"check", data("formulas/prev_below_7.thtc"), trace, "--at", "0"});
  EXPECT_EQ(no.code, cli::kNegative);
  EXPECT_EQ(nlohmann::json::parse(no.out)["satisfied"], false);
  Outcome all = run({"check", data("formulas/y_defined.thtc"), trace, "--all-times"});
  EXPECT_EQ(all.code, cli::kNegative);
  EXPECT_EQ(nlohmann::json::parse(all.out)["satisfied"], nlohmann::json::parse("[false, false, false, true]"));
}

TEST_F(CliTest, CheckInputErrors) {
  std::string trace = data("traces/example.trace");
  std::string bad = file("bad.thtc", "x <= & y\n");
  Outcome r = run({"check", bad, trace});
  EXPECT_EQ(r.code, cli::kInputError);
  EXPECT_NE(r.err.find("bad.thtc:1:"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("^"), std::string::npos);
  EXPECT_EQ(run({"check", data("formulas/conjunction.thtc"), trace, "--at", "4"}).code, cli::kInputError);
  EXPECT_EQ(run({"check", data("formulas/conjunction.thtc"), (dir_ / "missing.trace").string()}).code, cli::kInputError);
  EXPECT_EQ(run({"check", data("formulas/conjunction.thtc"), file("t.trace", R"({"length":1,"here":[{"x":"1"}],"there":[{}]})")}).code,
            cli::kInputError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kInputError);
  EXPECT_EQ(run({}).code, cli::kInputError);
}

TEST_F(CliTest, SolveRadar) {
  Outcome r = run({"solve", data("programs/radar.tlp"), "--horizon", "9"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["models"].size(), 1u);
  HTcTrace m = parse_trace(doc["models"][0].dump());
  EXPECT_EQ(m.there().at(8).get("p"), *Value::parse("671.749"));
  EXPECT_EQ(doc["stats"]["engine"], "stratified");
}

TEST_F(CliTest, SolveOutcomes) {
  Outcome guard = run({"solve", data("programs/radar.tlp"), "--horizon", "9", "--no-frame-guard"});
  EXPECT_EQ(guard.code, cli::kNegative);
  EXPECT_TRUE(nlohmann::json::parse(guard.out)["models"].empty());

  Outcome empty = run({"solve", file("empty.tlp", "% nothing\n"), "--horizon", "2"});
  EXPECT_EQ(empty.code, cli::kOk);
  HTcTrace m = parse_trace(nlohmann::json::parse(empty.out)["models"][0].dump());
  EXPECT_EQ(m, HTcTrace::total(Trace(2)));

  std::string prog = file("x.tlp", "var x : rational.\nx := 1.\n");
  EXPECT_EQ(run({"solve", prog, "--engine", "enumerate"}).code, cli::kInputError);
  std::string domains = file("d.json", R"({"x": ["1", "2"]})");
  Outcome en = run({"solve", prog, "--engine", "enumerate", "--domains", domains});
  EXPECT_EQ(en.code, cli::kOk) << en.err;
  EXPECT_EQ(nlohmann::json::parse(en.out)["stats"]["engine"], "enumerate");
  EXPECT_EQ(run({"solve", prog, "--engine", "magic"}).code, cli::kInputError);
  EXPECT_EQ(run({"solve", prog, "--horizon", "0"}).code, cli::kInputError);
  EXPECT_EQ(run({"solve", file("u.tlp", "x := 1.\n")}).code, cli::kInputError);
}

TEST_F(CliTest, SolveResourceLimit) {
  std::string prog = file("big.tlp", "var x, y, z : rational in {0, 1, 2}.\nalways: x := 1.\n");
  Outcome r = run({"solve", prog, "--engine", "enumerate", "--horizon", "9"});
  EXPECT_EQ(r.code, cli::kResourceLimit) << r.err;
}

TEST_F(CliTest, SolveFallsBackOnNegativeCycles) {
  std::string prog = file("cycle.tlp", "var x, y : rational in {1}.\nx := 1 :- not (y = 1).\ny := 1 :- not (x = 1).\n");
  Outcome r = run({"solve", prog});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_FALSE(r.err.empty());
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["models"].size(), 2u);
  EXPECT_EQ(doc["stats"]["engine"], "enumerate");
}

TEST_F(CliTest, Translate) {
  Outcome r = run({"translate", data("formulas/always_once.thtc")});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out,
            "![t' : time] : ($lesseq(t, t') => ?[t'' : time] : ($lesseq(t'', t') & "
            "(app(f_x, plus(t'', 2)) = app(f_x, t''))))\n");
  EXPECT_EQ(run({"translate", file("f.thtc", "false")}).out, "$false\n");
  EXPECT_EQ(run({"translate", file("i.thtc", "I")}).out, "~ ?[t' : time] : $less(t', t)\n");
  Outcome sig = run({"translate", file("s.thtc", "x = 4"), "--signature", "--free-var", "s"});
  EXPECT_EQ(sig.out, "% p_1/1 : x = 4\np_1(app(f_x, s))\n");
}

TEST_F(CliTest, Demo) {
  Outcome r = run({"demo", "radar"});
  ASSERT_EQ(r.code, cli::kOk);
  auto split = r.out.find("\n\n");
  ASSERT_NE(split, std::string::npos);
  std::istringstream table(r.out.substr(0, split));
  std::vector<std::string> lines;
  for (std::string l; std::getline(table, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 10u);
  auto cells = [](const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string c; in >> c;) out.push_back(c);
    return out;
  };
  auto header = cells(lines[0]);
  auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  };
  ASSERT_LT(col("fine"), header.size());
  auto row5 = cells(lines[6]);
  EXPECT_EQ(row5[col("s")], "91.35");
  EXPECT_EQ(row5[col("p")], "400");
  EXPECT_EQ(row5[col("acc")], "u");
  EXPECT_EQ(row5[col("fine")], "t");
  auto row8 = cells(lines[9]);
  EXPECT_EQ(row8[col("s")], "89.049");
  EXPECT_EQ(row8[col("p")], "671.749");
  EXPECT_NO_THROW(parse_trace(nlohmann::json::parse(r.out.substr(split + 2))["models"][0].dump()));
}

TEST_F(CliTest, DemoDefaultAcceleration) {
  auto model = [](const Outcome& r) {
    return parse_trace(nlohmann::json::parse(r.out.substr(r.out.find("\n\n") + 2))["models"][0].dump()).there();
  };
  Outcome a = run({"demo", "radar"});
  Outcome b = run({"demo", "radar-default-acc"});
  ASSERT_EQ(b.code, cli::kOk);
  Trace ta = model(a), tb = model(b);
  for (std::size_t i = 0; i < 9; ++i) {
    EXPECT_EQ(ta.at(i).get("s"), tb.at(i).get("s"));
    EXPECT_EQ(ta.at(i).get("p"), tb.at(i).get("p"));
    EXPECT_EQ(tb.at(i).get("acc"), ta.at(i).get("acc").defined() ? ta.at(i).get("acc") : Value(0));
  }
  EXPECT_EQ(run({"demo", "nope"}).code, cli::kInputError);
}

TEST_F(CliTest, OutputIsDeterministic) {
  std::string prog = file("r.tlp", "var x, y : rational in {0, 1}.\nx := 1 :- not (y = 1).\ny := 1 :- not (x = 1).\n");
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"demo", "radar"},
           {"solve", prog, "--engine", "enumerate", "--threads", "1"},
           {"translate", data("formulas/increasing.thtc")},
           {"check", data("formulas/not_changed.thtc"), data("traces/blank2.trace"), "--all-times"}}) {
    Outcome first = run(args);
    Outcome second = run(args);
    EXPECT_EQ(first.out, second.out);
    EXPECT_EQ(first.code, second.code);
  }
  Outcome one = run({"solve", prog, "--engine", "enumerate", "--threads", "1"});
  Outcome four = run({"solve", prog, "--engine", "enumerate", "--threads", "4"});
  EXPECT_EQ(one.out, four.out);
}

TEST_F(CliTest, HelpAndManual) {
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
  Outcome man = run({"manual"});
  EXPECT_EQ(man.code, cli::kOk);
  EXPECT_EQ(man.out, cli::manual_page());
  std::ifstream shipped(std::string(THTC_DATA_DIR) + "/../docs/thtc.1");
  std::ostringstream page;
  page << shipped.rdbuf();
  EXPECT_EQ(page.str(), man.out);
  for (const char* word : {".TH", "check", "solve", "translate", "demo", R"(\-\-no\-frame\-guard)", "EXIT STATUS"})
    EXPECT_NE(man.out.find(word), std::string::npos) << word;
}
