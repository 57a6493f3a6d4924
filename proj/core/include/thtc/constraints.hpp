#pragma once

#include "thtc/error.hpp"
#include "thtc/syntax.hpp"
#include "thtc/value.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace thtc {

using Membership = std::function<bool(std::span<const Value>)>;

/// Intensional solution relation over n-tuples of values-or-undefined.
/// A strict relation never contains a tuple with an undefined component.
class SolutionRelation {
 public:
  SolutionRelation(std::size_t arity, bool strict, Membership membership);

  std::size_t arity() const { return arity_; }
  bool strict() const { return strict_; }

  /// Membership test. Throws EvalError on an arity mismatch.
  bool contains(std::span<const Value> tuple) const;

 private:
  std::size_t arity_;
  bool strict_;
  Membership membership_;
};

/// Named relations available to Custom atoms. Populate, then freeze before
/// sharing across threads.
class AtomRegistry {
 public:
  struct Entry {
    std::size_t arity;
    bool strict;
    Membership membership;
  };

  /// Registry holding only the built-in `some_zero/3`.
  static const AtomRegistry& builtin();

  AtomRegistry();

  /// Throws EvalError if frozen or the name is already taken.
  void add(std::string name, std::size_t arity, bool strict, Membership membership);
  const Entry* find(std::string_view name) const;
  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

 private:
  std::map<std::string, Entry, std::less<>> entries_;
  bool frozen_ = false;
};

/// Membership for alpha <= beta on one value per occurrence slot. False if
/// any slot is undefined or not a number.
bool linear_leq_membership(const ConstraintAtom& atom, std::span<const Value> tuple);

/// some_zero(a, b, c): some component equals 0. Undefined components are
/// tolerated, so the relation is non-strict.
bool some_zero_membership(std::span<const Value> tuple);

/// The relation of an atom over its slots(). Throws EvalError for an
/// unregistered Custom atom.
SolutionRelation relation_of(const ConstraintAtom& atom,
                             const AtomRegistry& registry = AtomRegistry::builtin());

bool is_strict(const ConstraintAtom& atom, const AtomRegistry& registry = AtomRegistry::builtin());

/// Relation-level complement: fully defined tuples outside the relation.
/// Throws EvalError on a non-strict relation.
SolutionRelation complement(const SolutionRelation& relation);

/// Atom whose relation is the complement of `atom`'s. Throws EvalError if
/// `atom` is non-strict.
ConstraintAtom complement(const ConstraintAtom& atom,
                          const AtomRegistry& registry = AtomRegistry::builtin());

enum class Comparison : unsigned char { Leq, Lt, Eq, Neq };

/// A comparison between two linear terms viewed as a single strict atom.
/// Slots are lhs occurrences followed by rhs occurrences.
SolutionRelation linear_relation(Comparison comparison, const LinearTerm& lhs, const LinearTerm& rhs);

/// Distinct temporal terms of alpha in first-occurrence order, ONE excluded.
std::vector<TemporalTerm> terms_of(const LinearTerm& alpha);

/// Conjunction of x@l <= x@l over terms_of(alpha); Top when there are none.
Formula build_df(const LinearTerm& alpha);

/// Sum of coefficient * value over the summands, ONE read as 1. Returns
/// undefined if a slot is undefined or non-numeric. `values` holds one
/// entry per non-ONE summand.
Value evaluate_linear(const LinearTerm& term, std::span<const Value> values);

}  // namespace thtc
