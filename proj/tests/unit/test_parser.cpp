#include "generators.hpp"

#include "thtc/parser.hpp"

#include <gtest/gtest.h>

using namespace thtc;
namespace gen = thtc::testing;

namespace {

LinearTerm lin(std::string v, int o = 0) { return LinearTerm::of({std::move(v), o}); }

SourceSpan error_span(std::string_view text, Program (*parse)(std::string_view)) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.span();
  }
  ADD_FAILURE() << "no error for " << text;
  return {};
}

}  // namespace

TEST(ParseFormula, AlwaysIncreasing) {
  EXPECT_EQ(parse_formula("G (next(x) > x)"), Formula::always(Formula::lt(lin("x"), lin("x", 1))));
}

TEST(ParseFormula, LinearSumWithOffsets) {
  LinearTerm sum({{1, {"x", 1}}, {1, {"y", -1}}});
  EXPECT_EQ(parse_formula("x@1 + y@-1 <= z"), Formula::leq(sum, lin("z")));
}

TEST(ParseFormula, Constants) {
  EXPECT_EQ(parse_formula("false"), Formula::bottom());
  EXPECT_EQ(parse_formula("true"), Formula::top());
  EXPECT_EQ(parse_formula("I"), Formula::initial());
  EXPECT_EQ(parse_formula("Fin"), Formula::final_state());
}

TEST(ParseFormula, Precedence) {
  Formula a = Formula::boolean({"a", 0});
  Formula b = Formula::boolean({"b", 0});
  Formula c = Formula::boolean({"c", 0});
  EXPECT_EQ(parse_formula("a & b | c"), Formula::disj(Formula::conj(a, b), c));
  EXPECT_EQ(parse_formula("a -> b -> c"), Formula::implies(a, Formula::implies(b, c)));
  EXPECT_EQ(parse_formula("a -> b <-> c"), Formula::iff(Formula::implies(a, b), c));
  EXPECT_EQ(parse_formula("not a & b"), Formula::conj(Formula::negation(a), b));
  EXPECT_EQ(parse_formula("a U b & c"), Formula::conj(Formula::until(a, b), c));
}

TEST(ParseFormula, DecimalLiteralsClearDenominators) {
  Formula f = parse_formula("acc := 11.35");
  EXPECT_EQ(f.op(), Op::Assign);
  EXPECT_EQ(f.scale(), 20);
  EXPECT_EQ(f.rhs_term(), LinearTerm::constant(227));
}

TEST(ParseFormula, Errors) {
  EXPECT_THROW(parse_formula("x <="), ParseError);
  EXPECT_THROW(parse_formula("x @ y"), ParseError);
  EXPECT_THROW(parse_formula("x ** y"), ParseError);
  EXPECT_THROW(parse_formula("(x = 1"), ParseError);
}

TEST(ParseFormula, ErrorSpansLieInsideInput) {
  for (std::string text : {"x <=", "x@ = 1", "(a & b", "a & & b", "G", "x = 1 )", "1.5.2 < x"}) {
    try {
      parse_formula(text);
      ADD_FAILURE() << "accepted " << text;
    } catch (const ParseError& e) {
      EXPECT_LE(e.span().begin, text.size()) << text;
      EXPECT_LE(e.span().end, text.size()) << text;
      EXPECT_LE(e.span().begin, e.span().end) << text;
      EXPECT_EQ(e.span().line, 1u) << text;
    }
  }
}

TEST(ParseFormula, RoundTripOnRandomFormulas) {
  gen::Rng rng(3);
  gen::FormulaShape shape;
  shape.non_strict = true;
  for (int k = 0; k < 500; ++k) {
    Formula f = gen::random_formula(rng, shape);
    EXPECT_EQ(parse_formula(to_string(f)), f) << to_string(f);
  }
}

TEST(ParseProgram, InitialAssignment) {
  Program p = parse_program("var s : rational.\ns := 80.");
  ASSERT_EQ(p.rules.size(), 1u);
  const Rule& r = p.rules[0];
  EXPECT_EQ(r.scope, RuleScope::Initial);
  EXPECT_EQ(r.head.target, (TemporalTerm{"s", 0}));
  EXPECT_EQ(r.head.value, LinearTerm::constant(80));
  EXPECT_TRUE(r.positive_body.empty());
  EXPECT_TRUE(r.negative_body.empty());
}

TEST(ParseProgram, InertiaRule) {
  Program p = parse_program("var x : rational.\nalways: x@1 := x :- not (x@1 != x).");
  const Rule& r = p.rules.at(0);
  EXPECT_EQ(r.scope, RuleScope::Always);
  EXPECT_EQ(r.head.target, (TemporalTerm{"x", 1}));
  EXPECT_EQ(r.head.value, lin("x"));
  ASSERT_EQ(r.negative_body.size(), 1u);
  EXPECT_EQ(r.negative_body[0], Formula::neq(lin("x", 1), lin("x")));
}

TEST(ParseProgram, FineRule) {
  Program p = parse_program(
      "var p : rational. var s : rational. var rdpos : rational. var rdlimit : rational.\n"
      "var fine : boolean.\n"
      "always: fine@1 :- p < rdpos, p@1 >= rdpos, s@1 > rdlimit.");
  const Rule& r = p.rules.at(0);
  EXPECT_TRUE(r.head.is_boolean());
  EXPECT_EQ(r.head.target, (TemporalTerm{"fine", 1}));
  ASSERT_EQ(r.positive_body.size(), 3u);
  EXPECT_EQ(r.positive_body[0], Formula::lt(lin("p"), lin("rdpos")));
  EXPECT_EQ(r.positive_body[2], Formula::lt(lin("rdlimit"), lin("s", 1)));
  ASSERT_NE(p.find("fine"), nullptr);
  EXPECT_EQ(p.find("fine")->sort, Sort::Boolean);
}

TEST(ParseProgram, CandidateSets) {
  Program p = parse_program("var x : rational in {0, 1.5, 2}.");
  ASSERT_TRUE(p.variables.at(0).candidates.has_value());
  EXPECT_EQ(p.variables[0].candidates->size(), 3u);
  EXPECT_EQ(p.variables[0].candidates->at(1), *Value::parse("1.5"));
}

TEST(ParseProgram, Errors) {
  EXPECT_THROW(parse_program("x := 1."), ParseError);
  EXPECT_THROW(parse_program("var x : rational. var x : rational."), ParseError);
  EXPECT_THROW(parse_program("var x : rational. x + 1 := 2."), ParseError);
  EXPECT_THROW(parse_program("var x : rational. x := 1 :- G (x = 1)."), ParseError);
  EXPECT_THROW(parse_program("var b : boolean. b := 1."), ParseError);
  EXPECT_THROW(parse_program("var x : rational. always: x :- x = 1."), ParseError);
}

TEST(ParseProgram, ErrorSpanPointsAtTheOffendingLine) {
  SourceSpan s = error_span("var x : rational.\nx := y.", &parse_program);
  EXPECT_EQ(s.line, 2u);
  EXPECT_LE(s.end, std::string("var x : rational.\nx := y.").size());
}

TEST(ParseProgram, RoundTripOfShippedPrograms) {
  for (const char* text : {"var s : rational. var p : rational.\ns := 80.\np := 0.\nalways: p@1 := p + s.",
                           "var x : rational in {2}.\nalways: x@1 := x :- not (x@1 != x).\nx := 2."}) {
    Program p = parse_program(text);
    EXPECT_EQ(parse_program(to_string(p)), p) << to_string(p);
  }
}

TEST(ParseProgram, RoundTripOnRandomPrograms) {
  gen::Rng rng(5);
  for (int k = 0; k < 200; ++k) {
    Program p = parse_program(gen::random_program_text(rng, {}));
    EXPECT_EQ(parse_program(to_string(p)), p) << to_string(p);
  }
}

TEST(ParseTrace, TotalTrace) {
  HTcTrace m = parse_trace(R"({"length": 2, "here": [{"x":"4"},{"x":"5"}], "there": [{"x":"4"},{"x":"5"}]})");
  EXPECT_EQ(m.length(), 2u);
  EXPECT_EQ(m.here(), m.there());
  EXPECT_EQ(m.here().at(1).get("x"), Value(5));
}

TEST(ParseTrace, WorkedExampleTrace) {
  HTcTrace m = parse_trace(R"({"length": 4,
    "here":  [{"x":"4"}, {"x":"5"}, {}, {"x":"5","y":"6"}],
    "there": [{"x":"4","y":"6"}, {"x":"5"}, {"x":"4","y":"5"}, {"x":"5","y":"6"}]})");
  EXPECT_EQ(m.length(), 4u);
  EXPECT_FALSE(m.here().at(0).get("y").defined());
  EXPECT_EQ(m.there().at(0).get("y"), Value(6));
  EXPECT_EQ(m.there().at(2).get("x"), Value(4));
  EXPECT_EQ(m.here().at(2).defined_count(), 0u);
}

TEST(ParseTrace, Errors) {
  EXPECT_THROW(parse_trace(R"({"length": 1, "here": [{"x":"4"}], "there": [{}]})"), ParseError);
  EXPECT_THROW(parse_trace(R"({"length": 2, "here": [{}], "there": [{}]})"), ParseError);
  EXPECT_THROW(parse_trace(R"({"length": 1, "here": [{"x":"four"}], "there": [{"x":"four"}]})"), ParseError);
  EXPECT_THROW(parse_trace(R"({"length": 1, "here": [{}]})"), ParseError);
  EXPECT_THROW(parse_trace("{"), ParseError);
}

TEST(ParseTrace, WriteReadRoundTrip) {
  gen::Rng rng(9);
  std::vector<Value> values{Value(0), *Value::parse("-1.25"), *Value::parse("1/3"), Value::truth()};
  for (int k = 0; k < 100; ++k) {
    HTcTrace m = gen::random_htc(rng, 1 + k % 4, {"x", "y"}, values);
    EXPECT_EQ(parse_trace(write_trace(m)), m);
    EXPECT_EQ(parse_trace(write_trace(m.there())), HTcTrace::total(m.there()));
  }
}

TEST(ParseDomains, ReadsCandidateLists) {
  auto d = parse_domains(R"({"x": ["0", "1"], "b": ["t"]})");
  EXPECT_EQ(d.at("x"), (std::vector<Value>{Value(0), Value(1)}));
  EXPECT_EQ(d.at("b"), (std::vector<Value>{Value::truth()}));
  EXPECT_THROW(parse_domains(R"({"x": "0"})"), ParseError);
}
