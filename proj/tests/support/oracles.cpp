#include "oracles.hpp"

#include <stdexcept>

namespace thtc::testing {

namespace {

Value term_value(const PartialValuation& v, const TemporalTerm& t) {
  if (t.is_one()) return Value(std::int64_t{1});
  if (t.offset != 0) return Value();
  return v.get(t.variable);
}

bool leq_at(const PartialValuation& v, const LinearTerm& a, const LinearTerm& b) {
  auto x = linear_value(v, a);
  auto y = linear_value(v, b);
  return x && y && *x <= *y;
}

bool atom_at(const PartialValuation& v, const ConstraintAtom& a) {
  switch (a.kind) {
    case ConstraintAtom::Kind::LinearLeq: return leq_at(v, a.lhs, a.rhs);
    case ConstraintAtom::Kind::BoolIsTrue: return term_value(v, a.variable).is_truth();
    case ConstraintAtom::Kind::Custom: {
      if (a.name != "some_zero") throw std::logic_error("oracle knows only some_zero");
      for (const auto& t : a.args) {
        Value x = term_value(v, t);
        if (x.is_number() && x.number() == Rational(0)) return true;
      }
      return false;
    }
    case ConstraintAtom::Kind::Complement: {
      for (const auto& t : a.inner->slots())
        if (!term_value(v, t).defined()) return false;
      return !atom_at(v, *a.inner);
    }
  }
  return false;
}

}  // namespace

std::optional<Rational> linear_value(const PartialValuation& v, const LinearTerm& t) {
  Rational sum(0);
  for (const auto& s : t.summands()) {
    Value x = term_value(v, s.term);
    if (!x.is_number()) return std::nullopt;
    sum += Rational(s.coefficient) * x.number();
  }
  return sum;
}

bool htc_single(const PartialValuation& h, const PartialValuation& t, const Formula& f) {
  auto both = [&](auto&& test) { return test(h) && test(t); };
  auto lt = [&](const LinearTerm& a, const LinearTerm& b) {
    // (a <= b) & not (b <= a): the negated part is decided by "there".
    return both([&](const PartialValuation& v) { return leq_at(v, a, b); }) && !leq_at(t, b, a);
  };
  switch (f.op()) {
    case Op::Bottom: return false;
    case Op::Top: return true;
    case Op::Atom: return both([&](const PartialValuation& v) { return atom_at(v, f.atom()); });
    case Op::And: return htc_single(h, t, f.child(0)) && htc_single(h, t, f.child(1));
    case Op::Or: return htc_single(h, t, f.child(0)) || htc_single(h, t, f.child(1));
    case Op::Implies:
      return (!htc_single(h, t, f.child(0)) || htc_single(h, t, f.child(1))) &&
             (!htc_single(t, t, f.child(0)) || htc_single(t, t, f.child(1)));
    case Op::Not: return !htc_single(t, t, f.child(0));
    case Op::Iff: {
      bool a = htc_single(h, t, f.child(0)), b = htc_single(h, t, f.child(1));
      bool ta = htc_single(t, t, f.child(0)), tb = htc_single(t, t, f.child(1));
      return (a == b) && (ta == tb);
    }
    case Op::Eq: {
      auto defined_equal = [&](const PartialValuation& v) {
        auto x = linear_value(v, f.lhs_term());
        auto y = linear_value(v, f.rhs_term());
        return x && y && *x == *y;
      };
      return both(defined_equal);
    }
    case Op::Lt: return lt(f.lhs_term(), f.rhs_term());
    case Op::Neq: return lt(f.lhs_term(), f.rhs_term()) || lt(f.rhs_term(), f.lhs_term());
    case Op::Df:
      for (const auto& s : f.lhs_term().summands())
        if (!term_value(h, s.term).defined()) return false;
      return true;
    default: throw std::logic_error("temporal operator in a single-state formula");
  }
}

}  // namespace thtc::testing
