#include "generators.hpp"

#include "thtc/constraints.hpp"
#include "thtc/parser.hpp"

#include <gtest/gtest.h>

using namespace thtc;
namespace gen = thtc::testing;

namespace {

LinearTerm lin(std::string v, int o = 0, std::int64_t c = 1) { return LinearTerm::of({std::move(v), o}, c); }

bool member(const SolutionRelation& r, std::vector<Value> tuple) { return r.contains(tuple); }

const Value u = Value::undefined();

}  // namespace

TEST(LinearLeq, Membership) {
  auto atom = ConstraintAtom::leq(LinearTerm({{1, {"x", 0}}, {1, {"x", 5}}}), LinearTerm::constant(5));
  SolutionRelation r = relation_of(atom);
  EXPECT_EQ(r.arity(), 2u);
  EXPECT_TRUE(r.strict());
  EXPECT_TRUE(member(r, {Value(2), Value(3)}));
  EXPECT_FALSE(member(r, {Value(3), Value(3)}));
  EXPECT_FALSE(member(r, {u, Value(3)}));
  EXPECT_FALSE(member(r, {Value::truth(), Value(0)}));
  EXPECT_THROW(member(r, {Value(1)}), EvalError);
}

TEST(LinearLeq, EqualityThroughTwoAtoms) {
  std::vector<ConstraintAtom> atoms;
  collect_atoms(desugar(parse_formula("x = 4")), atoms);
  ASSERT_EQ(atoms.size(), 2u);
  for (const auto& a : atoms) {
    EXPECT_TRUE(member(relation_of(a), {Value(4)}));
    EXPECT_FALSE(member(relation_of(a), {u}));
  }
  EXPECT_FALSE(member(relation_of(atoms[0]), {Value(5)}) && member(relation_of(atoms[1]), {Value(5)}));
}

TEST(LinearLeq, RationalArithmeticIsExact) {
  auto atom = ConstraintAtom::leq(LinearTerm({{3, {"x", 0}}}), LinearTerm::constant(1));
  EXPECT_TRUE(member(relation_of(atom), {*Value::parse("1/3")}));
  EXPECT_FALSE(member(relation_of(atom), {*Value::parse("0.3334")}));
}

TEST(SomeZero, Membership) {
  EXPECT_TRUE(some_zero_membership(std::vector<Value>{u, Value(0), u}));
  EXPECT_FALSE(some_zero_membership(std::vector<Value>{Value(1), Value(2), Value(3)}));
  EXPECT_FALSE(some_zero_membership(std::vector<Value>{u, u, u}));
  auto atom = ConstraintAtom::custom("some_zero", {{"x", 0}, {"y", 0}, {"z", 0}});
  EXPECT_FALSE(is_strict(atom));
  EXPECT_THROW(complement(atom), EvalError);
}

TEST(BoolIsTrue, Membership) {
  SolutionRelation r = relation_of(ConstraintAtom::is_true({"b", 1}));
  EXPECT_TRUE(r.strict());
  EXPECT_TRUE(member(r, {Value::truth()}));
  EXPECT_FALSE(member(r, {u}));
  EXPECT_FALSE(member(r, {Value(1)}));
}

TEST(Complement, NextEqualsSelf) {
  SolutionRelation eq = linear_relation(Comparison::Eq, lin("x", 1), lin("x"));
  SolutionRelation neq = linear_relation(Comparison::Neq, lin("x", 1), lin("x"));
  SolutionRelation c = complement(eq);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) EXPECT_EQ(member(c, {Value(a), Value(b)}), member(neq, {Value(a), Value(b)}));
  EXPECT_FALSE(member(c, {u, Value(0)}));
  EXPECT_FALSE(member(neq, {u, Value(0)}));
}

TEST(Complement, OfAtomStaysStrict) {
  auto le5 = ConstraintAtom::leq(lin("x"), LinearTerm::constant(5));
  auto c = complement(le5);
  EXPECT_TRUE(is_strict(c));
  EXPECT_TRUE(member(relation_of(c), {Value(7)}));
  EXPECT_FALSE(member(relation_of(c), {Value(5)}));
  EXPECT_FALSE(member(relation_of(c), {u}));
}

TEST(Complement, IsAnInvolutionOnDefinedTuples) {
  auto atom = ConstraintAtom::leq(LinearTerm({{2, {"x", 0}}, {-1, {"y", 1}}}), LinearTerm::constant(1));
  auto twice = complement(complement(atom));
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      std::vector<Value> t{Value(a), Value(b)};
      EXPECT_EQ(member(relation_of(twice), t), member(relation_of(atom), t));
    }
}

TEST(Complement, PartitionsDefinedTuples) {
  gen::Rng rng(31);
  gen::FormulaShape shape;
  std::vector<Value> grid{Value(-1), Value(0), *Value::parse("1/2"), Value(1), Value(2)};
  for (int k = 0; k < 200; ++k) {
    Formula f = gen::random_atom(rng, shape);
    std::vector<ConstraintAtom> atoms;
    collect_atoms(desugar(f), atoms);
    for (const auto& a : atoms) {
      SolutionRelation r = relation_of(a);
      SolutionRelation c = relation_of(complement(a));
      ASSERT_EQ(r.arity(), c.arity());
      for (int s = 0; s < 20; ++s) {
        std::vector<Value> t;
        for (std::size_t j = 0; j < r.arity(); ++j) t.push_back(gen::pick(rng, grid));
        ASSERT_NE(member(r, t), member(c, t)) << to_string(a);
      }
    }
  }
}

TEST(Strictness, UndefinedSlotNeverMember) {
  gen::Rng rng(37);
  gen::FormulaShape shape;
  auto values = gen::small_values();
  for (int k = 0; k < 300; ++k) {
    std::vector<ConstraintAtom> atoms;
    collect_atoms(desugar(gen::random_atom(rng, shape)), atoms);
    for (const auto& a : atoms) {
      SolutionRelation r = relation_of(a);
      if (!r.strict() || r.arity() == 0) continue;
      std::vector<Value> t;
      for (std::size_t j = 0; j < r.arity(); ++j) t.push_back(gen::pick(rng, values));
      t[gen::uniform(rng, 0, static_cast<int>(r.arity()) - 1)] = u;
      ASSERT_FALSE(member(r, t)) << to_string(a);
    }
  }
}

TEST(Df, BuildAndTerms) {
  LinearTerm scaled = lin("x", -2, 2);
  EXPECT_EQ(terms_of(scaled), (std::vector<TemporalTerm>{{"x", -2}}));
  EXPECT_EQ(build_df(scaled), Formula::leq(lin("x", -2), lin("x", -2)));
  EXPECT_TRUE(terms_of(LinearTerm::constant(41)).empty());
  EXPECT_EQ(build_df(LinearTerm::constant(41)), Formula::top());
  LinearTerm sum({{1, {"x", 0}}, {1, {"y", 1}}});
  EXPECT_EQ(terms_of(sum), (std::vector<TemporalTerm>{{"x", 0}, {"y", 1}}));
  EXPECT_EQ(build_df(sum), Formula::conj(Formula::leq(lin("x"), lin("x")), Formula::leq(lin("y", 1), lin("y", 1))));
  LinearTerm repeated({{1, {"x", 0}}, {3, {"x", 0}}, {1, TemporalTerm::one()}});
  EXPECT_EQ(terms_of(repeated), (std::vector<TemporalTerm>{{"x", 0}}));
}

TEST(Linear, Evaluate) {
  LinearTerm t({{2, {"x", 0}}, {-1, {"y", 0}}, {3, TemporalTerm::one()}});
  EXPECT_EQ(evaluate_linear(t, std::vector<Value>{Value(5), Value(1)}), Value(12));
  EXPECT_FALSE(evaluate_linear(t, std::vector<Value>{Value(5), u}).defined());
}

TEST(Registry, CustomAtoms) {
  AtomRegistry reg;
  reg.add("pos", 1, true, [](std::span<const Value> v) { return v[0].is_number() && v[0].number() > 0; });
  EXPECT_THROW(reg.add("pos", 1, true, nullptr), EvalError);
  auto atom = ConstraintAtom::custom("pos", {{"x", 0}});
  EXPECT_TRUE(member(relation_of(atom, reg), {Value(2)}));
  EXPECT_THROW(relation_of(atom), EvalError);
  reg.freeze();
  EXPECT_THROW(reg.add("neg", 1, true, nullptr), EvalError);
}
