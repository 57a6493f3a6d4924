#include "thtc/semantics.hpp"

#include <unordered_map>

namespace thtc {

namespace {

struct MemoKey {
  const void* node;
  std::int64_t time;
  bool there;
  friend bool operator==(const MemoKey&, const MemoKey&) = default;
};

struct MemoHash {
  std::size_t operator()(const MemoKey& k) const noexcept {
    std::size_t h = std::hash<const void*>()(k.node);
    h ^= std::hash<std::int64_t>()(k.time) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h ^ (k.there ? 0x51ed27ULL : 0);
  }
};

// Structural evaluator over core formulas. `Policy` decides atoms; the
// `there` flag selects the world <t, t> instead of the current pair.
template <typename Policy>
class Evaluator {
 public:
  explicit Evaluator(Policy policy) : policy_(std::move(policy)), length_(static_cast<std::int64_t>(policy_.length())) {}

  bool eval(const Formula& f, std::int64_t i, bool there) {
    MemoKey key{f.identity(), i, there};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool r = compute(f, i, there);
    memo_.emplace(key, r);
    return r;
  }

 private:
  bool compute(const Formula& f, std::int64_t i, bool there) {
    switch (f.op()) {
      case Op::Bottom: return false;
      case Op::Atom: return policy_.atom(f.atom(), f.identity(), i, there);
      case Op::And: return eval(f.child(0), i, there) && eval(f.child(1), i, there);
      case Op::Or: return eval(f.child(0), i, there) || eval(f.child(1), i, there);
      case Op::Implies: {
        if (!there && eval(f.child(0), i, false) && !eval(f.child(1), i, false)) return false;
        return !eval(f.child(0), i, true) || eval(f.child(1), i, true);
      }
      case Op::Next: return i < length_ - 1 && eval(f.child(0), i + 1, there);
      case Op::Previous: return i > 0 && eval(f.child(0), i - 1, there);
      case Op::Until:
        for (std::int64_t k = i; k < length_; ++k) {
          if (eval(f.child(1), k, there)) return true;
          if (!eval(f.child(0), k, there)) return false;
        }
        return false;
      case Op::Release:
        for (std::int64_t k = i; k < length_; ++k) {
          if (!eval(f.child(1), k, there)) return false;
          if (eval(f.child(0), k, there)) return true;
        }
        return true;
      case Op::Since:
        for (std::int64_t k = i; k >= 0; --k) {
          if (eval(f.child(1), k, there)) return true;
          if (!eval(f.child(0), k, there)) return false;
        }
        return false;
      case Op::Trigger:
        for (std::int64_t k = i; k >= 0; --k) {
          if (!eval(f.child(1), k, there)) return false;
          if (eval(f.child(0), k, there)) return true;
        }
        return true;
      default:
        throw EvalError(std::string("formula is not in core form: ") + op_name(f.op()));
    }
  }

  Policy policy_;
  std::int64_t length_;
  std::unordered_map<MemoKey, bool, MemoHash> memo_;
};

class TracePolicy {
 public:
  TracePolicy(const Trace& here, const Trace& there, const EvalContext& ctx)
      : here_(&here), there_(&there), ctx_(ctx) {
    if (here.length() != there.length()) throw EvalError("here and there traces differ in length");
  }

  std::size_t length() const { return here_->length(); }

  bool atom(const ConstraintAtom& a, const void* id, std::int64_t i, bool there) {
    const SolutionRelation& rel = relation(a, id);
    const auto& slots = slots_of(a, id);
    if (ctx_.mode == AtomMode::StrictShortcut && !rel.strict())
      throw EvalError("non-strict atom " + to_string(a) + " under the here-only shortcut");
    tuple_.resize(slots.size());
    auto holds_in = [&](const Trace& tr) {
      for (std::size_t k = 0; k < slots.size(); ++k) tuple_[k] = value_at_unchecked(tr, i, slots[k]);
      return rel.contains(tuple_);
    };
    const Trace& h = there ? *there_ : *here_;
    if (!holds_in(h)) return false;
    if (ctx_.mode == AtomMode::StrictShortcut || there) return true;
    return holds_in(*there_);
  }

 private:
  const SolutionRelation& relation(const ConstraintAtom& a, const void* id) {
    auto it = relations_.find(id);
    if (it == relations_.end()) it = relations_.emplace(id, relation_of(a, *ctx_.registry)).first;
    return it->second;
  }

  const std::vector<TemporalTerm>& slots_of(const ConstraintAtom& a, const void* id) {
    auto it = slots_.find(id);
    if (it == slots_.end()) it = slots_.emplace(id, a.slots()).first;
    return it->second;
  }

  const Trace* here_;
  const Trace* there_;
  EvalContext ctx_;
  std::unordered_map<const void*, SolutionRelation> relations_;
  std::unordered_map<const void*, std::vector<TemporalTerm>> slots_;
  std::vector<Value> tuple_;
};

class BooleanPolicy {
 public:
  explicit BooleanPolicy(const BooleanHTTrace& trace) : trace_(&trace) {}

  std::size_t length() const { return trace_->length(); }

  bool atom(const ConstraintAtom& a, const void*, std::int64_t i, bool there) {
    if (a.kind != ConstraintAtom::Kind::BoolIsTrue) throw EvalError("non-Boolean atom " + to_string(a) + " in THT formula");
    std::int64_t j = i + a.variable.offset;
    if (j < 0 || j >= static_cast<std::int64_t>(length())) return false;
    const auto& sets = there ? trace_->there() : trace_->here();
    return sets[static_cast<std::size_t>(j)].count(a.variable.variable) > 0;
  }

 private:
  const BooleanHTTrace* trace_;
};

void check_index(std::size_t i, std::size_t length) {
  if (i >= length)
    throw EvalError("time index " + std::to_string(i) + " outside trace of length " + std::to_string(length));
}

bool eval_core(const Trace& here, const Trace& there, std::size_t i, const Formula& core, const EvalContext& ctx) {
  check_index(i, here.length());
  Evaluator<TracePolicy> ev(TracePolicy(here, there, ctx));
  return ev.eval(core, static_cast<std::int64_t>(i), false);
}

}  // namespace

bool satisfies_core(const Trace& here, const Trace& there, std::size_t i, const Formula& core,
                    const EvalContext& context) {
  return eval_core(here, there, i, core, context);
}

bool satisfies(const Trace& here, const Trace& there, std::size_t i, const Formula& formula, const EvalContext& context) {
  return eval_core(here, there, i, desugar(formula), context);
}

bool satisfies(const HTcTrace& model, std::size_t i, const Formula& formula, const EvalContext& context) {
  return satisfies(model.here(), model.there(), i, formula, context);
}

bool satisfies_strict(const HTcTrace& model, std::size_t i, const Formula& formula, const AtomRegistry& registry) {
  return satisfies(model, i, formula, EvalContext{&registry, AtomMode::StrictShortcut});
}

std::vector<bool> satisfies_all(const HTcTrace& model, const Formula& formula, const EvalContext& context) {
  Formula core = desugar(formula);
  Evaluator<TracePolicy> ev(TracePolicy(model.here(), model.there(), context));
  std::vector<bool> out(model.length());
  for (std::size_t i = 0; i < model.length(); ++i) out[i] = ev.eval(core, static_cast<std::int64_t>(i), false);
  return out;
}

bool derived_oracle(const HTcTrace& model, std::size_t i, DerivedOp op, const Formula& argument,
                    const EvalContext& context) {
  std::size_t n = model.length();
  check_index(i, n);
  auto at = [&](std::size_t j) { return satisfies(model, j, argument, context); };
  switch (op) {
    case DerivedOp::AlwaysPast:
      for (std::size_t j = 0; j <= i; ++j)
        if (!at(j)) return false;
      return true;
    case DerivedOp::EventuallyPast:
      for (std::size_t j = 0; j <= i; ++j)
        if (at(j)) return true;
      return false;
    case DerivedOp::Initial: return i == 0;
    case DerivedOp::WeakPrev: return i == 0 || at(i - 1);
    case DerivedOp::Always:
      for (std::size_t j = i; j < n; ++j)
        if (!at(j)) return false;
      return true;
    case DerivedOp::Eventually:
      for (std::size_t j = i; j < n; ++j)
        if (at(j)) return true;
      return false;
    case DerivedOp::Final: return i + 1 == n;
    case DerivedOp::WeakNext: return i + 1 == n || at(i + 1);
  }
  return false;
}

bool is_equilibrium(const Trace& there, const Formula& formula, const EquilibriumOptions& options) {
  if (there.defined_count() > options.entry_limit)
    throw ResourceLimit("trace has " + std::to_string(there.defined_count()) +
                        " defined entries, above the minimality-check limit of " + std::to_string(options.entry_limit));
  Formula core = desugar(formula);
  if (!eval_core(there, there, 0, core, options.context)) return false;
  for (const Trace& h : proper_weakenings(there))
    if (eval_core(h, there, 0, core, options.context)) return false;
  return true;
}

BooleanHTTrace::BooleanHTTrace(std::vector<AtomSet> here, std::vector<AtomSet> there)
    : here_(std::move(here)), there_(std::move(there)) {
  if (here_.size() != there_.size()) throw EvalError("here and there differ in length");
  if (here_.empty()) throw EvalError("a trace has at least one state");
  for (std::size_t i = 0; i < here_.size(); ++i)
    for (const auto& p : here_[i])
      if (!there_[i].count(p)) throw EvalError("here set is not contained in there set at " + std::to_string(i));
}

bool tht_satisfies(const BooleanHTTrace& trace, std::size_t i, const Formula& formula) {
  check_index(i, trace.length());
  Evaluator<BooleanPolicy> ev{BooleanPolicy(trace)};
  return ev.eval(desugar(formula), static_cast<std::int64_t>(i), false);
}

bool tht_is_equilibrium(const std::vector<AtomSet>& there, const Formula& formula) {
  Formula core = desugar(formula);
  auto holds = [&](const std::vector<AtomSet>& here) {
    BooleanHTTrace b(here, there);
    Evaluator<BooleanPolicy> ev{BooleanPolicy(b)};
    return ev.eval(core, 0, false);
  };
  if (!holds(there)) return false;
  std::vector<std::pair<std::size_t, std::string>> items;
  for (std::size_t i = 0; i < there.size(); ++i)
    for (const auto& p : there[i]) items.emplace_back(i, p);
  if (items.size() > 62) throw ResourceLimit("too many atoms to enumerate");
  std::uint64_t end = std::uint64_t{1} << items.size();
  for (std::uint64_t mask = 1; mask < end; ++mask) {
    std::vector<AtomSet> here = there;
    for (std::size_t k = 0; k < items.size(); ++k)
      if (mask & (std::uint64_t{1} << k)) here[items[k].first].erase(items[k].second);
    if (holds(here)) return false;
  }
  return true;
}

HTcTrace delta_embed(const BooleanHTTrace& trace) {
  auto convert = [](const std::vector<AtomSet>& sets) {
    std::vector<PartialValuation> states(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (const auto& p : sets[i]) states[i].set(p, Value::truth());
    return Trace(std::move(states));
  };
  return HTcTrace(convert(trace.here()), convert(trace.there()));
}

BooleanHTTrace delta_inverse(const HTcTrace& trace) {
  auto convert = [](const Trace& t) {
    std::vector<AtomSet> sets(t.length());
    for (std::size_t i = 0; i < t.length(); ++i)
      for (const auto& [x, v] : t.at(i).entries()) {
        if (!v.is_truth()) throw EvalError("value " + v.to_string() + " of " + x + " is not the truth constant");
        sets[i].insert(x);
      }
    return sets;
  };
  return BooleanHTTrace(convert(trace.here()), convert(trace.there()));
}

}  // namespace thtc
