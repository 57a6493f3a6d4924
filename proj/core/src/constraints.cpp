#include "thtc/constraints.hpp"

#include <algorithm>

namespace thtc {

SolutionRelation::SolutionRelation(std::size_t arity, bool strict, Membership membership)
    : arity_(arity), strict_(strict), membership_(std::move(membership)) {}

bool SolutionRelation::contains(std::span<const Value> tuple) const {
  if (tuple.size() != arity_)
    throw EvalError("tuple of size " + std::to_string(tuple.size()) + " for relation of arity " + std::to_string(arity_));
  return membership_(tuple);
}

AtomRegistry::AtomRegistry() = default;

const AtomRegistry& AtomRegistry::builtin() {
  static const AtomRegistry registry = [] {
    AtomRegistry r;
    r.add("some_zero", 3, false, some_zero_membership);
    r.freeze();
    return r;
  }();
  return registry;
}

void AtomRegistry::add(std::string name, std::size_t arity, bool strict, Membership membership) {
  if (frozen_) throw EvalError("atom registry is frozen");
  if (entries_.count(name)) throw EvalError("atom '" + name + "' already registered");
  entries_.emplace(std::move(name), Entry{arity, strict, std::move(membership)});
}

const AtomRegistry::Entry* AtomRegistry::find(std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

namespace {

// Sum over the summands, consuming one value per non-ONE summand from
// `values` starting at `pos`.
Value sum_side(const LinearTerm& term, std::span<const Value> values, std::size_t& pos) {
  Rational acc;
  bool ok = true;
  for (const auto& s : term.summands()) {
    if (s.term.is_one()) {
      acc += Rational(s.coefficient);
      continue;
    }
    const Value& v = values[pos++];
    if (!v.is_number()) {
      ok = false;
      continue;
    }
    acc += Rational(s.coefficient) * v.number();
  }
  return ok ? Value(std::move(acc)) : Value::undefined();
}

std::size_t slot_count(const LinearTerm& t) {
  return static_cast<std::size_t>(std::count_if(t.summands().begin(), t.summands().end(),
                                                [](const Summand& s) { return !s.term.is_one(); }));
}

bool compare(Comparison cmp, const Rational& a, const Rational& b) {
  switch (cmp) {
    case Comparison::Leq: return a <= b;
    case Comparison::Lt: return a < b;
    case Comparison::Eq: return a == b;
    case Comparison::Neq: return a != b;
  }
  return false;
}

}  // namespace

Value evaluate_linear(const LinearTerm& term, std::span<const Value> values) {
  if (values.size() != slot_count(term)) throw EvalError("value count does not match linear term");
  std::size_t pos = 0;
  return sum_side(term, values, pos);
}

bool linear_leq_membership(const ConstraintAtom& atom, std::span<const Value> tuple) {
  std::size_t pos = 0;
  Value a = sum_side(atom.lhs, tuple, pos);
  Value b = sum_side(atom.rhs, tuple, pos);
  return a.is_number() && b.is_number() && a.number() <= b.number();
}

bool some_zero_membership(std::span<const Value> tuple) {
  return std::any_of(tuple.begin(), tuple.end(), [](const Value& v) { return v.is_number() && v.number().is_zero(); });
}

SolutionRelation linear_relation(Comparison comparison, const LinearTerm& lhs, const LinearTerm& rhs) {
  std::size_t n = slot_count(lhs) + slot_count(rhs);
  return SolutionRelation(n, true, [comparison, lhs, rhs](std::span<const Value> tuple) {
    std::size_t pos = 0;
    Value a = sum_side(lhs, tuple, pos);
    Value b = sum_side(rhs, tuple, pos);
    return a.is_number() && b.is_number() && compare(comparison, a.number(), b.number());
  });
}

SolutionRelation relation_of(const ConstraintAtom& atom, const AtomRegistry& registry) {
  switch (atom.kind) {
    case ConstraintAtom::Kind::LinearLeq:
      return linear_relation(Comparison::Leq, atom.lhs, atom.rhs);
    case ConstraintAtom::Kind::BoolIsTrue:
      return SolutionRelation(1, true, [](std::span<const Value> t) { return t[0].is_truth(); });
    case ConstraintAtom::Kind::Custom: {
      const auto* e = registry.find(atom.name);
      if (!e) throw EvalError("unregistered constraint atom '" + atom.name + "'");
      if (e->arity != atom.args.size())
        throw EvalError("atom '" + atom.name + "' expects " + std::to_string(e->arity) + " arguments");
      return SolutionRelation(e->arity, e->strict, e->membership);
    }
    case ConstraintAtom::Kind::Complement:
      return complement(relation_of(*atom.inner, registry));
  }
  throw EvalError("unknown atom kind");
}

bool is_strict(const ConstraintAtom& atom, const AtomRegistry& registry) {
  switch (atom.kind) {
    case ConstraintAtom::Kind::LinearLeq:
    case ConstraintAtom::Kind::BoolIsTrue:
    case ConstraintAtom::Kind::Complement:
      return true;
    case ConstraintAtom::Kind::Custom: {
      const auto* e = registry.find(atom.name);
      if (!e) throw EvalError("unregistered constraint atom '" + atom.name + "'");
      return e->strict;
    }
  }
  return false;
}

SolutionRelation complement(const SolutionRelation& relation) {
  if (!relation.strict()) throw EvalError("complement of a non-strict relation");
  return SolutionRelation(relation.arity(), true, [relation](std::span<const Value> t) {
    return std::all_of(t.begin(), t.end(), [](const Value& v) { return v.defined(); }) && !relation.contains(t);
  });
}

ConstraintAtom complement(const ConstraintAtom& atom, const AtomRegistry& registry) {
  if (!is_strict(atom, registry)) throw EvalError("complement of non-strict atom " + to_string(atom));
  return ConstraintAtom::complement_of(atom);
}

std::vector<TemporalTerm> terms_of(const LinearTerm& alpha) {
  std::vector<TemporalTerm> out;
  for (const auto& s : alpha.summands())
    if (!s.term.is_one() && std::find(out.begin(), out.end(), s.term) == out.end()) out.push_back(s.term);
  return out;
}

Formula build_df(const LinearTerm& alpha) {
  std::vector<Formula> parts;
  for (const auto& t : terms_of(alpha)) parts.push_back(Formula::leq(LinearTerm::of(t), LinearTerm::of(t)));
  return Formula::conj_all(parts);
}

}  // namespace thtc
