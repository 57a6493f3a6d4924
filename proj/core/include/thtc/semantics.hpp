#pragma once

#include "thtc/constraints.hpp"
#include "thtc/error.hpp"
#include "thtc/syntax.hpp"
#include "thtc/trace.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace thtc {

enum class AtomMode : unsigned char {
  /// Atoms check the value tuple under both here and there.
  General,
  /// Atoms check only the here component. Legal for strict atoms only.
  StrictShortcut,
};

struct EvalContext {
  const AtomRegistry* registry = &AtomRegistry::builtin();
  AtomMode mode = AtomMode::General;
};

/// M, i |= phi. Sugar is desugared first. Throws EvalError when i is out of
/// range or an atom is unregistered (or non-strict in StrictShortcut mode).
bool satisfies(const HTcTrace& model, std::size_t i, const Formula& formula,
               const EvalContext& context = {});

/// Same, but over a pair of trace references. Precondition: here ⊑ there
/// and equal lengths (not rechecked).
bool satisfies(const Trace& here, const Trace& there, std::size_t i, const Formula& formula,
               const EvalContext& context = {});

/// Same as above for a formula already in core form (no desugaring).
/// Throws EvalError on a sugar node.
bool satisfies_core(const Trace& here, const Trace& there, std::size_t i, const Formula& core,
                    const EvalContext& context = {});

/// satisfies() with atoms evaluated by the here-only shortcut.
bool satisfies_strict(const HTcTrace& model, std::size_t i, const Formula& formula,
                      const AtomRegistry& registry = AtomRegistry::builtin());

/// Truth at every time point 0..lambda-1, sharing one memo table.
std::vector<bool> satisfies_all(const HTcTrace& model, const Formula& formula,
                                const EvalContext& context = {});

enum class DerivedOp : unsigned char {
  AlwaysPast, EventuallyPast, Initial, WeakPrev, Always, Eventually, Final, WeakNext,
};

/// Direct evaluation of a derived operator from its quantified reading
/// (e.g. always: phi holds at every j in [i, lambda)). `argument` is
/// ignored for Initial and Final. Test oracle for desugar + satisfies.
bool derived_oracle(const HTcTrace& model, std::size_t i, DerivedOp op,
                    const Formula& argument = Formula::top(), const EvalContext& context = {});

struct EquilibriumOptions {
  /// Maximum defined entries in the candidate (2^limit - 1 weakenings).
  std::size_t entry_limit = 20;
  EvalContext context = {};
};

/// <t, t> is a temporal equilibrium model of phi: it satisfies phi at 0 and no
/// proper weakening h of t has <h, t>, 0 |= phi. Throws ResourceLimit above
/// the entry limit.
bool is_equilibrium(const Trace& there, const Formula& formula,
                    const EquilibriumOptions& options = {});

// ---------------------------------------------------------------------------
// Boolean THT traces and the delta embedding

using AtomSet = std::set<std::string>;

/// <H, T> with H_i ⊆ T_i, checked on construction.
class BooleanHTTrace {
 public:
  BooleanHTTrace(std::vector<AtomSet> here, std::vector<AtomSet> there);

  const std::vector<AtomSet>& here() const { return here_; }
  const std::vector<AtomSet>& there() const { return there_; }
  std::size_t length() const { return here_.size(); }

  friend bool operator==(const BooleanHTTrace&, const BooleanHTTrace&) = default;

 private:
  std::vector<AtomSet> here_;
  std::vector<AtomSet> there_;
};

/// THT satisfaction: a Boolean atom p@o holds at i when p ∈ H_{i+o}.
/// Throws EvalError on any non-Boolean atom.
bool tht_satisfies(const BooleanHTTrace& trace, std::size_t i, const Formula& formula);

/// <T, T> is a THT equilibrium model of phi.
bool tht_is_equilibrium(const std::vector<AtomSet>& there, const Formula& formula);

/// p ↦ t where p ∈ H_i (resp. T_i), undefined otherwise.
HTcTrace delta_embed(const BooleanHTTrace& trace);

/// Inverse of delta_embed. Throws EvalError if some defined value is not t.
BooleanHTTrace delta_inverse(const HTcTrace& trace);

}  // namespace thtc
