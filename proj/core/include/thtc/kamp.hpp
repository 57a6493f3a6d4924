#pragma once

#include "thtc/constraints.hpp"
#include "thtc/error.hpp"
#include "thtc/syntax.hpp"
#include "thtc/trace.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace thtc {

/// Time-sorted term: a variable or a constant, displaced by `offset`.
struct FOTime {
  std::optional<std::string> variable;  // empty for a constant
  std::int64_t constant = 0;
  std::int64_t offset = 0;

  static FOTime var(std::string name, std::int64_t offset = 0) { return {std::move(name), 0, offset}; }
  static FOTime at(std::int64_t constant, std::int64_t offset = 0) { return {std::nullopt, constant, offset}; }
  bool is_variable() const { return variable.has_value(); }

  friend bool operator==(const FOTime&, const FOTime&) = default;
};

/// A time term, or f_x applied to one.
struct FOTerm {
  std::optional<std::string> function;  // variable name x of f_x
  FOTime time;

  static FOTerm of_time(FOTime time) { return {std::nullopt, std::move(time)}; }
  static FOTerm apply(std::string variable, FOTime time) { return {std::move(variable), std::move(time)}; }
  bool is_application() const { return function.has_value(); }

  friend bool operator==(const FOTerm&, const FOTerm&) = default;
};

struct FOFormula {
  enum class Kind : unsigned char {
    Bottom, Top, Pred, Eq, Lt, Leq, And, Or, Implies, Exists, Forall,
  };

  Kind kind = Kind::Bottom;
  std::string name;             // predicate name or bound variable
  std::vector<FOTerm> terms;    // Pred arguments; Eq/Lt/Leq operands
  std::vector<FOFormula> children;

  static FOFormula bottom() { return {}; }
  static FOFormula top() { return {Kind::Top, {}, {}, {}}; }
  static FOFormula pred(std::string name, std::vector<FOTerm> args) { return {Kind::Pred, std::move(name), std::move(args), {}}; }
  static FOFormula compare(Kind kind, FOTerm a, FOTerm b) { return {kind, {}, {std::move(a), std::move(b)}, {}}; }
  static FOFormula binary(Kind kind, FOFormula a, FOFormula b) { return {kind, {}, {}, {std::move(a), std::move(b)}}; }
  static FOFormula quantified(Kind kind, std::string variable, FOFormula body) { return {kind, std::move(variable), {}, {std::move(body)}}; }
  static FOFormula negation(FOFormula a) { return binary(Kind::Implies, std::move(a), bottom()); }

  friend bool operator==(const FOFormula&, const FOFormula&) = default;
};

/// Uninterpreted predicate introduced for a constraint atom, with the
/// relation and term layout the correspondence needs to build I.
struct PredicateSymbol {
  std::string name;
  SolutionRelation relation;
  std::vector<TemporalTerm> slots;
  std::string source;  // the atom in formula syntax
};

struct Translation {
  FOFormula formula;
  std::vector<PredicateSymbol> signature;
};

/// ST_t(phi). Sugared temporal operators use the short forms; comparisons
/// between two plain terms map to the interpreted =, <, <=; every other
/// atom becomes p_k(f_x(t+o), ...). Bound variables are `t'`, `t''`, ...
/// by binder depth. Throws EvalError for an unregistered custom atom.
Translation st_translate(const Formula& formula, std::string_view free_variable = "t",
                         const AtomRegistry& registry = AtomRegistry::builtin());

/// phi[variable / constant] for free occurrences.
FOFormula substitute(const FOFormula& formula, std::string_view variable, std::int64_t constant);

/// Free time variables of the formula, sorted.
std::set<std::string> free_variables(const FOFormula& formula);

using GroundAtom = std::pair<std::string, std::vector<Value>>;

struct QHTState {
  /// sigma(f_x(i)); absent keys are undefined.
  std::map<std::pair<std::string, std::int64_t>, Value> sigma;
  std::set<GroundAtom> atoms;

  friend bool operator==(const QHTState&, const QHTState&) = default;
};

/// S ⪯ S': A ⊆ A' and sigma agrees wherever it is defined.
bool precedes_eq(const QHTState& a, const QHTState& b);

struct QHTInterpretation {
  std::size_t horizon = 1;  // time constants 0..horizon-1
  QHTState here;
  QHTState there;
  std::vector<PredicateSymbol> signature;
};

/// The interpretation corresponding to an HTc trace for the given symbols.
/// Throws EvalError if a symbol's relation is non-strict.
QHTInterpretation correspond(const HTcTrace& model, const std::vector<PredicateSymbol>& signature);

/// The state (sigma_w, I_w) a single trace induces.
QHTState state_of(const Trace& trace, const std::vector<PredicateSymbol>& signature);

/// Satisfaction for closed formulas. Throws EvalError on a free variable.
bool qht_satisfies(const QHTInterpretation& interpretation, const FOFormula& formula);

/// <S_t, S_t> satisfies psi and no S_h ≺ S_t does, where S_h ranges over
/// states obtained by undefining sigma entries with I closed under the
/// correspondence. Throws ResourceLimit above `entry_limit` sigma entries.
bool qht_is_equilibrium(const QHTInterpretation& total, const FOFormula& formula,
                        std::size_t entry_limit = 20);

/// Prefix text, e.g. `![t' : time] : ($lesseq(t, t') => p_1(app(f_x, t')))`.
std::string export_fo(const FOFormula& formula);

/// One `% p_k/n : atom` comment line per symbol.
std::string describe_signature(const std::vector<PredicateSymbol>& signature);

}  // namespace thtc
