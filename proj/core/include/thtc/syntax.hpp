#pragma once

#include "thtc/error.hpp"
#include "thtc/value.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace thtc {

/// Name of the reserved pseudo-variable whose value is 1 everywhere. It is
/// not a legal identifier in any concrete syntax.
inline constexpr std::string_view kOneVariable = "#one";

/// A variable displaced by `offset` time steps (positive = future).
struct TemporalTerm {
  std::string variable;
  int offset = 0;

  static TemporalTerm one() { return {std::string(kOneVariable), 0}; }
  bool is_one() const { return variable == kOneVariable; }
  TemporalTerm shifted(int by) const { return {variable, offset + by}; }

  friend auto operator<=>(const TemporalTerm&, const TemporalTerm&) = default;
};

struct Summand {
  std::int64_t coefficient = 1;
  TemporalTerm term;

  friend auto operator<=>(const Summand&, const Summand&) = default;
};

/// Integer-coefficient combination d1*x1@o1 + ... + dn*xn@on. Constants are
/// coefficients of the ONE pseudo-variable.
class LinearTerm {
 public:
  LinearTerm() : summands_{{0, TemporalTerm::one()}} {}
  explicit LinearTerm(std::vector<Summand> summands);

  static LinearTerm of(TemporalTerm term, std::int64_t coefficient = 1) {
    return LinearTerm({{coefficient, std::move(term)}});
  }
  static LinearTerm constant(std::int64_t value) { return of(TemporalTerm::one(), value); }

  const std::vector<Summand>& summands() const { return summands_; }

  /// True for a lone non-ONE term with coefficient 1.
  bool is_plain_term() const;

  LinearTerm scaled(std::int64_t factor) const;
  LinearTerm shifted(int by) const;

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;

 private:
  std::vector<Summand> summands_;
};

/// A constraint atom with a solution relation over the values of its
/// temporal terms.
struct ConstraintAtom {
  enum class Kind : unsigned char { LinearLeq, BoolIsTrue, Custom, Complement };

  Kind kind = Kind::LinearLeq;
  LinearTerm lhs;                   // LinearLeq
  LinearTerm rhs;                   // LinearLeq
  TemporalTerm variable;            // BoolIsTrue
  std::string name;                 // Custom
  std::vector<TemporalTerm> args;   // Custom
  std::shared_ptr<const ConstraintAtom> inner;  // Complement

  static ConstraintAtom leq(LinearTerm lhs, LinearTerm rhs);
  static ConstraintAtom is_true(TemporalTerm variable);
  static ConstraintAtom custom(std::string name, std::vector<TemporalTerm> args);
  static ConstraintAtom complement_of(ConstraintAtom atom);

  /// One entry per syntactic occurrence of a temporal term, ONE excluded.
  /// This is the tuple layout the solution relation is applied to.
  std::vector<TemporalTerm> slots() const;

  friend bool operator==(const ConstraintAtom& a, const ConstraintAtom& b);
};

/// Formula constructors. The first block is the core language; everything
/// from Top onwards is sugar removed by desugar().
enum class Op : unsigned char {
  Atom, Bottom, And, Or, Implies, Next, Until, Release, Previous, Since, Trigger,
  Top, Not, Iff, Initial, Final, WeakPrev, WeakNext, AlwaysPast, EventuallyPast,
  Always, Eventually, Eq, Lt, Neq, Assign, Df,
};

bool is_core(Op op);
const char* op_name(Op op);

struct FormulaNode;

/// Immutable formula tree with shared structure. Copies are cheap.
class Formula {
 public:
  Formula();  // Bottom

  static Formula atom(ConstraintAtom atom, SourceSpan span = {});
  static Formula leq(LinearTerm lhs, LinearTerm rhs) { return atom(ConstraintAtom::leq(std::move(lhs), std::move(rhs))); }
  static Formula boolean(TemporalTerm variable) { return atom(ConstraintAtom::is_true(std::move(variable))); }
  static Formula bottom();
  static Formula top();

  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula negation(Formula a);

  static Formula next(Formula a);
  static Formula previous(Formula a);
  static Formula until(Formula a, Formula b);
  static Formula release(Formula a, Formula b);
  static Formula since(Formula a, Formula b);
  static Formula trigger(Formula a, Formula b);

  static Formula initial();
  static Formula final_state();
  static Formula weak_next(Formula a);
  static Formula weak_prev(Formula a);
  static Formula always(Formula a);
  static Formula eventually(Formula a);
  static Formula always_past(Formula a);
  static Formula eventually_past(Formula a);

  static Formula eq(LinearTerm lhs, LinearTerm rhs);
  static Formula lt(LinearTerm lhs, LinearTerm rhs);
  static Formula neq(LinearTerm lhs, LinearTerm rhs);
  /// scale * target := value, i.e. df(value) -> scale * target = value.
  static Formula assign(TemporalTerm target, LinearTerm value, std::int64_t scale = 1);
  static Formula df(LinearTerm term);

  /// Generic constructor for connectives (no atom / term payload).
  static Formula make(Op op, std::vector<Formula> children);

  /// Left-nested conjunction; Top for an empty list.
  static Formula conj_all(const std::vector<Formula>& parts);
  static Formula disj_all(const std::vector<Formula>& parts);

  Op op() const;
  std::size_t arity() const;
  const Formula& child(std::size_t index) const;
  const std::vector<Formula>& children() const;

  const ConstraintAtom& atom() const;           // Op::Atom
  const LinearTerm& lhs_term() const;           // Eq, Lt, Neq, Df
  const LinearTerm& rhs_term() const;           // Eq, Lt, Neq, Assign (value)
  const TemporalTerm& target() const;           // Assign
  std::int64_t scale() const;                   // Assign

  const SourceSpan& span() const;
  Formula with_span(SourceSpan span) const;

  /// True when no sugar constructor occurs anywhere in the tree.
  bool is_core() const;

  /// Stable address of the shared node, used as a memo key.
  const void* identity() const { return node_.get(); }

  /// Structural equality; source spans are ignored.
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

/// Rewrites every derived operator into the core connectives.
Formula desugar(const Formula& formula);

struct OffsetSpan {
  int min = 0;
  int max = 0;
  friend bool operator==(const OffsetSpan&, const OffsetSpan&) = default;
};

/// Least and greatest term offset in the formula (ONE excluded); {0,0}
/// when the formula mentions no terms.
OffsetSpan offset_span(const Formula& formula);

/// Names of all variables mentioned (ONE excluded).
std::set<std::string> variables_of(const Formula& formula);

/// Every constraint atom in the tree, in left-to-right order.
void collect_atoms(const Formula& formula, std::vector<ConstraintAtom>& out);

// ---------------------------------------------------------------------------
// Programs

enum class RuleScope : unsigned char { Initial, Always };
enum class Sort : unsigned char { Rational, Boolean };

/// scale * target := value, or target = t for a Boolean head.
struct RuleHead {
  TemporalTerm target;
  std::int64_t scale = 1;
  std::optional<LinearTerm> value;

  bool is_boolean() const { return !value.has_value(); }
  friend bool operator==(const RuleHead&, const RuleHead&) = default;
};

/// head <- l1, ..., lm, not l(m+1), ..., not lk, optionally under always.
/// Body literals are comparison or Boolean atom formulas (no nesting).
struct Rule {
  RuleHead head;
  std::vector<Formula> positive_body;
  std::vector<Formula> negative_body;
  RuleScope scope = RuleScope::Initial;
  SourceSpan span;

  /// The head as a formula: an Assign node, or the Boolean atom.
  Formula head_formula() const;
  /// body -> head, wrapped in Always for always-scope rules.
  Formula to_formula() const;

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.head == b.head && a.positive_body == b.positive_body &&
           a.negative_body == b.negative_body && a.scope == b.scope;
  }
};

struct VariableDecl {
  std::string name;
  Sort sort = Sort::Rational;
  std::optional<std::vector<Value>> candidates;

  friend bool operator==(const VariableDecl&, const VariableDecl&) = default;
};

struct Program {
  std::vector<VariableDecl> variables;
  std::vector<Rule> rules;

  const VariableDecl* find(std::string_view name) const;
  /// Conjunction of every rule formula (Top for an empty program).
  Formula to_formula() const;

  friend bool operator==(const Program&, const Program&) = default;
};

// Concrete-syntax printing (parse(to_string(x)) == x).
std::string to_string(const TemporalTerm& term);
std::string to_string(const LinearTerm& term);
std::string to_string(const ConstraintAtom& atom);
std::string to_string(const Formula& formula);
std::string to_string(const Rule& rule);
std::string to_string(const Program& program);

}  // namespace thtc
