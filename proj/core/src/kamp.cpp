#include "thtc/kamp.hpp"

#include <functional>
#include <map>

namespace thtc {

namespace {

using K = FOFormula::Kind;

FOFormula conj(FOFormula a, FOFormula b) { return FOFormula::binary(K::And, std::move(a), std::move(b)); }
FOFormula disj(FOFormula a, FOFormula b) { return FOFormula::binary(K::Or, std::move(a), std::move(b)); }
FOFormula imp(FOFormula a, FOFormula b) { return FOFormula::binary(K::Implies, std::move(a), std::move(b)); }
FOFormula exists(std::string v, FOFormula b) { return FOFormula::quantified(K::Exists, std::move(v), std::move(b)); }
FOFormula forall(std::string v, FOFormula b) { return FOFormula::quantified(K::Forall, std::move(v), std::move(b)); }

FOTerm time_term(const std::string& v, std::int64_t offset = 0) { return FOTerm::of_time(FOTime::var(v, offset)); }
FOFormula cmp(K kind, FOTerm a, FOTerm b) { return FOFormula::compare(kind, std::move(a), std::move(b)); }

class Translator {
 public:
  Translator(std::string base, const AtomRegistry& registry) : base_(std::move(base)), registry_(registry) {}

  FOFormula tr(const Formula& f, const std::string& t, int depth) {
    auto bound = [&](int d) { return base_ + std::string(static_cast<std::size_t>(d), '\''); };
    switch (f.op()) {
      case Op::Bottom: return FOFormula::bottom();
      case Op::Top: return FOFormula::top();
      case Op::Atom: return atom(f, t);
      case Op::And: return conj(tr(f.child(0), t, depth), tr(f.child(1), t, depth));
      case Op::Or: return disj(tr(f.child(0), t, depth), tr(f.child(1), t, depth));
      case Op::Implies: return imp(tr(f.child(0), t, depth), tr(f.child(1), t, depth));
      case Op::Not: return FOFormula::negation(tr(f.child(0), t, depth));
      case Op::Iff: {
        auto a = tr(f.child(0), t, depth);
        auto b = tr(f.child(1), t, depth);
        return conj(imp(a, b), imp(b, a));
      }
      case Op::Next: {
        auto u = bound(depth + 1);
        return exists(u, conj(cmp(K::Eq, time_term(u), time_term(t, 1)), tr(f.child(0), u, depth + 1)));
      }
      case Op::Previous: {
        auto u = bound(depth + 1);
        return exists(u, conj(cmp(K::Eq, time_term(t), time_term(u, 1)), tr(f.child(0), u, depth + 1)));
      }
      case Op::Until: {
        auto u = bound(depth + 1);
        auto w = bound(depth + 2);
        auto inner = forall(w, imp(conj(cmp(K::Leq, time_term(t), time_term(w)), cmp(K::Lt, time_term(w), time_term(u))),
                                   tr(f.child(0), w, depth + 2)));
        return exists(u, conj(conj(cmp(K::Leq, time_term(t), time_term(u)), tr(f.child(1), u, depth + 1)), inner));
      }
      case Op::Release: {
        auto u = bound(depth + 1);
        auto w = bound(depth + 2);
        auto inner = exists(w, conj(conj(cmp(K::Leq, time_term(t), time_term(w)), cmp(K::Lt, time_term(w), time_term(u))),
                                    tr(f.child(0), w, depth + 2)));
        return forall(u, imp(cmp(K::Leq, time_term(t), time_term(u)), disj(tr(f.child(1), u, depth + 1), inner)));
      }
      case Op::Since: {
        auto u = bound(depth + 1);
        auto w = bound(depth + 2);
        auto inner = forall(w, imp(conj(cmp(K::Lt, time_term(u), time_term(w)), cmp(K::Leq, time_term(w), time_term(t))),
                                   tr(f.child(0), w, depth + 2)));
        return exists(u, conj(conj(cmp(K::Leq, time_term(u), time_term(t)), tr(f.child(1), u, depth + 1)), inner));
      }
      case Op::Trigger: {
        auto u = bound(depth + 1);
        auto w = bound(depth + 2);
        auto inner = exists(w, conj(conj(cmp(K::Lt, time_term(u), time_term(w)), cmp(K::Leq, time_term(w), time_term(t))),
                                    tr(f.child(0), w, depth + 2)));
        return forall(u, imp(cmp(K::Leq, time_term(u), time_term(t)), disj(tr(f.child(1), u, depth + 1), inner)));
      }
      case Op::Initial: {
        auto u = bound(depth + 1);
        return FOFormula::negation(exists(u, cmp(K::Lt, time_term(u), time_term(t))));
      }
      case Op::Final: {
        auto u = bound(depth + 1);
        return FOFormula::negation(exists(u, cmp(K::Lt, time_term(t), time_term(u))));
      }
      case Op::WeakPrev: {
        auto u = bound(depth + 1);
        return forall(u, imp(cmp(K::Eq, time_term(t), time_term(u, 1)), tr(f.child(0), u, depth + 1)));
      }
      case Op::WeakNext: {
        auto u = bound(depth + 1);
        return forall(u, imp(cmp(K::Eq, time_term(u), time_term(t, 1)), tr(f.child(0), u, depth + 1)));
      }
      case Op::Eventually: {
        auto u = bound(depth + 1);
        return exists(u, conj(cmp(K::Leq, time_term(t), time_term(u)), tr(f.child(0), u, depth + 1)));
      }
      case Op::EventuallyPast: {
        auto u = bound(depth + 1);
        return exists(u, conj(cmp(K::Leq, time_term(u), time_term(t)), tr(f.child(0), u, depth + 1)));
      }
      case Op::Always: {
        auto u = bound(depth + 1);
        return forall(u, imp(cmp(K::Leq, time_term(t), time_term(u)), tr(f.child(0), u, depth + 1)));
      }
      case Op::AlwaysPast: {
        auto u = bound(depth + 1);
        return forall(u, imp(cmp(K::Leq, time_term(u), time_term(t)), tr(f.child(0), u, depth + 1)));
      }
      case Op::Eq: return comparison(Comparison::Eq, f, t);
      case Op::Lt: return comparison(Comparison::Lt, f, t);
      case Op::Neq: return comparison(Comparison::Neq, f, t);
      case Op::Df: return df(f.lhs_term(), t);
      case Op::Assign: {
        auto target = LinearTerm::of(f.target(), f.scale());
        return imp(df(f.rhs_term(), t), tr(Formula::eq(target, f.rhs_term()), t, depth));
      }
    }
    throw EvalError("unknown formula node");
  }

  std::vector<PredicateSymbol> take_signature() { return std::move(signature_); }

 private:
  static FOTerm apply(const TemporalTerm& term, const std::string& t) {
    return FOTerm::apply(term.variable, FOTime::var(t, term.offset));
  }

  FOFormula df(const LinearTerm& alpha, const std::string& t) {
    std::vector<FOFormula> parts;
    for (const auto& x : terms_of(alpha)) parts.push_back(cmp(K::Leq, apply(x, t), apply(x, t)));
    if (parts.empty()) return FOFormula::top();
    FOFormula acc = parts[0];
    for (std::size_t k = 1; k < parts.size(); ++k) acc = conj(std::move(acc), parts[k]);
    return acc;
  }

  FOFormula comparison(Comparison c, const Formula& f, const std::string& t) {
    const auto& a = f.lhs_term();
    const auto& b = f.rhs_term();
    if (a.is_plain_term() && b.is_plain_term()) {
      auto x = apply(a.summands()[0].term, t);
      auto y = apply(b.summands()[0].term, t);
      switch (c) {
        case Comparison::Eq: return cmp(K::Eq, x, y);
        case Comparison::Lt: return cmp(K::Lt, x, y);
        case Comparison::Neq: return disj(cmp(K::Lt, x, y), cmp(K::Lt, y, x));
        case Comparison::Leq: return cmp(K::Leq, x, y);
      }
    }
    std::vector<TemporalTerm> slots;
    for (const auto* side : {&a, &b})
      for (const auto& s : side->summands())
        if (!s.term.is_one()) slots.push_back(s.term);
    return predicate(to_string(f), [&] { return linear_relation(c, a, b); }, slots, t);
  }

  FOFormula atom(const Formula& f, const std::string& t) {
    const auto& a = f.atom();
    if (a.kind == ConstraintAtom::Kind::LinearLeq && a.lhs.is_plain_term() && a.rhs.is_plain_term())
      return cmp(K::Leq, apply(a.lhs.summands()[0].term, t), apply(a.rhs.summands()[0].term, t));
    return predicate(to_string(a), [&] { return relation_of(a, registry_); }, a.slots(), t);
  }

  FOFormula predicate(const std::string& source, const std::function<SolutionRelation()>& relation,
                      const std::vector<TemporalTerm>& slots, const std::string& t) {
    auto it = names_.find(source);
    if (it == names_.end()) {
      std::string name = "p_" + std::to_string(signature_.size() + 1);
      signature_.push_back({name, relation(), slots, source});
      it = names_.emplace(source, name).first;
    }
    std::vector<FOTerm> args;
    for (const auto& s : slots) args.push_back(apply(s, t));
    return FOFormula::pred(it->second, std::move(args));
  }

  std::string base_;
  const AtomRegistry& registry_;
  std::vector<PredicateSymbol> signature_;
  std::map<std::string, std::string> names_;
};

FOTime subst_time(FOTime t, std::string_view v, std::int64_t c) {
  if (t.variable && *t.variable == v) return FOTime::at(c, t.offset);
  return t;
}

// Result of evaluating a term: a time point, a domain value, or undefined.
struct TermValue {
  enum class Kind : unsigned char { Undefined, Time, Value } kind = Kind::Undefined;
  std::int64_t time = 0;
  Value value;

  bool defined() const { return kind != Kind::Undefined; }
};

class QHTEvaluator {
 public:
  QHTEvaluator(const QHTInterpretation& q) : q_(q), horizon_(static_cast<std::int64_t>(q.horizon)) {}

  bool eval(const FOFormula& f, bool there) {
    switch (f.kind) {
      case K::Bottom: return false;
      case K::Top: return true;
      case K::Pred: {
        const QHTState& s = there ? q_.there : q_.here;
        GroundAtom g{f.name, {}};
        for (const auto& a : f.terms) {
          TermValue v = term(a, there);
          if (!v.defined()) return false;
          g.second.push_back(v.kind == TermValue::Kind::Time ? Value(v.time) : v.value);
        }
        return s.atoms.count(g) > 0;
      }
      case K::Eq: case K::Lt: case K::Leq: {
        TermValue a = term(f.terms[0], there);
        TermValue b = term(f.terms[1], there);
        if (!a.defined() || !b.defined() || a.kind != b.kind) return false;
        if (a.kind == TermValue::Kind::Time) {
          if (f.kind == K::Eq) return a.time == b.time;
          if (f.kind == K::Lt) return a.time < b.time;
          return a.time <= b.time;
        }
        if (f.kind == K::Eq) return a.value == b.value;
        bool lt = a.value.is_number() && b.value.is_number() && a.value.number() < b.value.number();
        return f.kind == K::Lt ? lt : (lt || a.value == b.value);
      }
      case K::And: return eval(f.children[0], there) && eval(f.children[1], there);
      case K::Or: return eval(f.children[0], there) || eval(f.children[1], there);
      case K::Implies:
        if (!there && eval(f.children[0], false) && !eval(f.children[1], false)) return false;
        return !eval(f.children[0], true) || eval(f.children[1], true);
      case K::Exists: case K::Forall: {
        bool want = f.kind == K::Exists;
        auto saved = env_.find(f.name);
        std::optional<std::int64_t> old;
        if (saved != env_.end()) old = saved->second;
        bool result = !want;
        for (std::int64_t c = 0; c < horizon_; ++c) {
          env_[f.name] = c;
          if (eval(f.children[0], there) == want) {
            result = want;
            break;
          }
        }
        if (old) env_[f.name] = *old;
        else env_.erase(f.name);
        return result;
      }
    }
    return false;
  }

 private:
  std::optional<std::int64_t> time(const FOTime& t) {
    std::int64_t base = t.constant;
    if (t.variable) {
      auto it = env_.find(*t.variable);
      if (it == env_.end()) throw EvalError("unbound variable " + *t.variable);
      base = it->second;
    }
    if (base < 0 || base >= horizon_) return std::nullopt;
    std::int64_t r = base + t.offset;
    if (r < 0 || r >= horizon_) return std::nullopt;
    return r;
  }

  TermValue term(const FOTerm& t, bool there) {
    TermValue out;
    auto i = time(t.time);
    if (!i) return out;
    if (!t.function) {
      out.kind = TermValue::Kind::Time;
      out.time = *i;
      return out;
    }
    const auto& sigma = (there ? q_.there : q_.here).sigma;
    auto it = sigma.find({*t.function, *i});
    if (it == sigma.end() || !it->second.defined()) return out;
    out.kind = TermValue::Kind::Value;
    out.value = it->second;
    return out;
  }

  const QHTInterpretation& q_;
  std::int64_t horizon_;
  std::map<std::string, std::int64_t, std::less<>> env_;
};

void collect_free(const FOFormula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  auto time_var = [&](const FOTime& t) {
    if (t.variable && !bound.count(*t.variable)) out.insert(*t.variable);
  };
  for (const auto& t : f.terms) time_var(t.time);
  if (f.kind == K::Exists || f.kind == K::Forall) {
    bool fresh = bound.insert(f.name).second;
    collect_free(f.children[0], bound, out);
    if (fresh) bound.erase(f.name);
    return;
  }
  for (const auto& c : f.children) collect_free(c, bound, out);
}

}  // namespace

Translation st_translate(const Formula& formula, std::string_view free_variable, const AtomRegistry& registry) {
  Translator t{std::string(free_variable), registry};
  Translation out;
  out.formula = t.tr(formula, std::string(free_variable), 0);
  out.signature = t.take_signature();
  return out;
}

FOFormula substitute(const FOFormula& formula, std::string_view variable, std::int64_t constant) {
  FOFormula out = formula;
  if ((out.kind == K::Exists || out.kind == K::Forall) && out.name == variable) return out;
  for (auto& t : out.terms) t.time = subst_time(t.time, variable, constant);
  for (auto& c : out.children) c = substitute(c, variable, constant);
  return out;
}

std::set<std::string> free_variables(const FOFormula& formula) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_free(formula, bound, out);
  return out;
}

bool precedes_eq(const QHTState& a, const QHTState& b) {
  for (const auto& g : a.atoms)
    if (!b.atoms.count(g)) return false;
  for (const auto& [k, v] : a.sigma) {
    if (!v.defined()) continue;
    auto it = b.sigma.find(k);
    if (it == b.sigma.end() || it->second != v) return false;
  }
  return true;
}

QHTState state_of(const Trace& trace, const std::vector<PredicateSymbol>& signature) {
  QHTState s;
  for (const auto& e : defined_entries(trace)) s.sigma[{e.variable, static_cast<std::int64_t>(e.time)}] = e.value;
  for (const auto& p : signature) {
    std::vector<Value> tuple(p.slots.size());
    for (std::size_t i = 0; i < trace.length(); ++i) {
      for (std::size_t k = 0; k < p.slots.size(); ++k)
        tuple[k] = value_at_unchecked(trace, static_cast<std::int64_t>(i), p.slots[k]);
      if (p.relation.contains(tuple)) s.atoms.insert({p.name, tuple});
    }
  }
  return s;
}

QHTInterpretation correspond(const HTcTrace& model, const std::vector<PredicateSymbol>& signature) {
  for (const auto& p : signature)
    if (!p.relation.strict()) throw EvalError("non-strict atom " + p.source + " has no QHT counterpart");
  QHTInterpretation q;
  q.horizon = model.length();
  q.here = state_of(model.here(), signature);
  q.there = state_of(model.there(), signature);
  q.signature = signature;
  return q;
}

bool qht_satisfies(const QHTInterpretation& interpretation, const FOFormula& formula) {
  QHTEvaluator ev(interpretation);
  return ev.eval(formula, false);
}

bool qht_is_equilibrium(const QHTInterpretation& total, const FOFormula& formula, std::size_t entry_limit) {
  if (!(total.here == total.there)) throw EvalError("equilibrium check needs a total interpretation");
  if (!qht_satisfies(total, formula)) return false;
  std::vector<std::pair<std::string, std::int64_t>> keys;
  for (const auto& [k, v] : total.there.sigma)
    if (v.defined()) keys.push_back(k);
  if (keys.size() > entry_limit || keys.size() > 62)
    throw ResourceLimit("interpretation has " + std::to_string(keys.size()) + " defined terms, above the limit");
  std::uint64_t end = std::uint64_t{1} << keys.size();
  for (std::uint64_t mask = 1; mask < end; ++mask) {
    Trace h(total.horizon);
    for (std::size_t k = 0; k < keys.size(); ++k) {
      if (mask & (std::uint64_t{1} << k)) continue;
      h.at(static_cast<std::size_t>(keys[k].second)).set(keys[k].first, total.there.sigma.at(keys[k]));
    }
    QHTInterpretation weaker = total;
    weaker.here = state_of(h, total.signature);
    if (qht_satisfies(weaker, formula)) return false;
  }
  return true;
}

std::string describe_signature(const std::vector<PredicateSymbol>& signature) {
  std::string s;
  for (const auto& p : signature)
    s += "% " + p.name + "/" + std::to_string(p.slots.size()) + " : " + p.source + "\n";
  return s;
}

}  // namespace thtc
