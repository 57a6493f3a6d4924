#include "thtc/syntax.hpp"

#include "thtc/constraints.hpp"

#include <algorithm>
#include <limits>

namespace thtc {

struct FormulaNode {
  Op op = Op::Bottom;
  std::vector<Formula> children;
  std::optional<ConstraintAtom> atom;
  LinearTerm lhs;
  LinearTerm rhs;
  TemporalTerm target;
  std::int64_t scale = 1;
  SourceSpan span;
};

namespace {

const std::vector<Formula>& no_children() {
  static const std::vector<Formula> empty;
  return empty;
}

std::size_t expected_arity(Op op) {
  switch (op) {
    case Op::Atom: case Op::Bottom: case Op::Top: case Op::Initial: case Op::Final:
    case Op::Eq: case Op::Lt: case Op::Neq: case Op::Assign: case Op::Df:
      return 0;
    case Op::Next: case Op::Previous: case Op::Not: case Op::WeakPrev: case Op::WeakNext:
    case Op::AlwaysPast: case Op::EventuallyPast: case Op::Always: case Op::Eventually:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

LinearTerm::LinearTerm(std::vector<Summand> summands) : summands_(std::move(summands)) {
  if (summands_.empty()) summands_.push_back({0, TemporalTerm::one()});
}

bool LinearTerm::is_plain_term() const {
  return summands_.size() == 1 && summands_[0].coefficient == 1 && !summands_[0].term.is_one();
}

LinearTerm LinearTerm::scaled(std::int64_t factor) const {
  auto s = summands_;
  for (auto& x : s) x.coefficient *= factor;
  return LinearTerm(std::move(s));
}

LinearTerm LinearTerm::shifted(int by) const {
  auto s = summands_;
  for (auto& x : s)
    if (!x.term.is_one()) x.term.offset += by;
  return LinearTerm(std::move(s));
}

ConstraintAtom ConstraintAtom::leq(LinearTerm lhs, LinearTerm rhs) {
  ConstraintAtom a;
  a.kind = Kind::LinearLeq;
  a.lhs = std::move(lhs);
  a.rhs = std::move(rhs);
  return a;
}

ConstraintAtom ConstraintAtom::is_true(TemporalTerm variable) {
  ConstraintAtom a;
  a.kind = Kind::BoolIsTrue;
  a.variable = std::move(variable);
  return a;
}

ConstraintAtom ConstraintAtom::custom(std::string name, std::vector<TemporalTerm> args) {
  ConstraintAtom a;
  a.kind = Kind::Custom;
  a.name = std::move(name);
  a.args = std::move(args);
  return a;
}

ConstraintAtom ConstraintAtom::complement_of(ConstraintAtom atom) {
  ConstraintAtom a;
  a.kind = Kind::Complement;
  a.inner = std::make_shared<const ConstraintAtom>(std::move(atom));
  return a;
}

std::vector<TemporalTerm> ConstraintAtom::slots() const {
  std::vector<TemporalTerm> out;
  switch (kind) {
    case Kind::LinearLeq:
      for (const auto* side : {&lhs, &rhs})
        for (const auto& s : side->summands())
          if (!s.term.is_one()) out.push_back(s.term);
      break;
    case Kind::BoolIsTrue:
      out.push_back(variable);
      break;
    case Kind::Custom:
      out = args;
      break;
    case Kind::Complement:
      out = inner->slots();
      break;
  }
  return out;
}

bool operator==(const ConstraintAtom& a, const ConstraintAtom& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ConstraintAtom::Kind::LinearLeq: return a.lhs == b.lhs && a.rhs == b.rhs;
    case ConstraintAtom::Kind::BoolIsTrue: return a.variable == b.variable;
    case ConstraintAtom::Kind::Custom: return a.name == b.name && a.args == b.args;
    case ConstraintAtom::Kind::Complement: return *a.inner == *b.inner;
  }
  return false;
}

bool is_core(Op op) { return static_cast<unsigned>(op) <= static_cast<unsigned>(Op::Trigger); }

const char* op_name(Op op) {
  switch (op) {
    case Op::Atom: return "atom";
    case Op::Bottom: return "bottom";
    case Op::And: return "and";
    case Op::Or: return "or";
    case Op::Implies: return "implies";
    case Op::Next: return "next";
    case Op::Until: return "until";
    case Op::Release: return "release";
    case Op::Previous: return "previous";
    case Op::Since: return "since";
    case Op::Trigger: return "trigger";
    case Op::Top: return "top";
    case Op::Not: return "not";
    case Op::Iff: return "iff";
    case Op::Initial: return "initial";
    case Op::Final: return "final";
    case Op::WeakPrev: return "weak-previous";
    case Op::WeakNext: return "weak-next";
    case Op::AlwaysPast: return "always-past";
    case Op::EventuallyPast: return "eventually-past";
    case Op::Always: return "always";
    case Op::Eventually: return "eventually";
    case Op::Eq: return "eq";
    case Op::Lt: return "lt";
    case Op::Neq: return "neq";
    case Op::Assign: return "assign";
    case Op::Df: return "df";
  }
  return "?";
}

Formula::Formula() : node_(std::make_shared<const FormulaNode>()) {}

Formula Formula::atom(ConstraintAtom atom, SourceSpan span) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Atom;
  n->atom = std::move(atom);
  n->span = span;
  return Formula(std::move(n));
}

Formula Formula::bottom() {
  static const Formula b;
  return b;
}

Formula Formula::top() { return make(Op::Top, {}); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, {std::move(a), std::move(b)}); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, {std::move(a), std::move(b)}); }
Formula Formula::implies(Formula a, Formula b) { return make(Op::Implies, {std::move(a), std::move(b)}); }
Formula Formula::iff(Formula a, Formula b) { return make(Op::Iff, {std::move(a), std::move(b)}); }
Formula Formula::negation(Formula a) { return make(Op::Not, {std::move(a)}); }
Formula Formula::next(Formula a) { return make(Op::Next, {std::move(a)}); }
Formula Formula::previous(Formula a) { return make(Op::Previous, {std::move(a)}); }
Formula Formula::until(Formula a, Formula b) { return make(Op::Until, {std::move(a), std::move(b)}); }
Formula Formula::release(Formula a, Formula b) { return make(Op::Release, {std::move(a), std::move(b)}); }
Formula Formula::since(Formula a, Formula b) { return make(Op::Since, {std::move(a), std::move(b)}); }
Formula Formula::trigger(Formula a, Formula b) { return make(Op::Trigger, {std::move(a), std::move(b)}); }
Formula Formula::initial() { return make(Op::Initial, {}); }
Formula Formula::final_state() { return make(Op::Final, {}); }
Formula Formula::weak_next(Formula a) { return make(Op::WeakNext, {std::move(a)}); }
Formula Formula::weak_prev(Formula a) { return make(Op::WeakPrev, {std::move(a)}); }
Formula Formula::always(Formula a) { return make(Op::Always, {std::move(a)}); }
Formula Formula::eventually(Formula a) { return make(Op::Eventually, {std::move(a)}); }
Formula Formula::always_past(Formula a) { return make(Op::AlwaysPast, {std::move(a)}); }
Formula Formula::eventually_past(Formula a) { return make(Op::EventuallyPast, {std::move(a)}); }

Formula Formula::eq(LinearTerm lhs, LinearTerm rhs) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Eq;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Formula(std::move(n));
}

Formula Formula::lt(LinearTerm lhs, LinearTerm rhs) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Lt;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Formula(std::move(n));
}

Formula Formula::neq(LinearTerm lhs, LinearTerm rhs) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Neq;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Formula(std::move(n));
}

Formula Formula::assign(TemporalTerm target, LinearTerm value, std::int64_t scale) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Assign;
  n->target = std::move(target);
  n->rhs = std::move(value);
  n->scale = scale;
  return Formula(std::move(n));
}

Formula Formula::df(LinearTerm term) {
  auto n = std::make_shared<FormulaNode>();
  n->op = Op::Df;
  n->lhs = std::move(term);
  return Formula(std::move(n));
}

Formula Formula::make(Op op, std::vector<Formula> children) {
  if (op == Op::Atom || op == Op::Eq || op == Op::Lt || op == Op::Neq || op == Op::Assign || op == Op::Df)
    throw EvalError(std::string("Formula::make cannot build payload node ") + op_name(op));
  if (children.size() != expected_arity(op))
    throw EvalError(std::string("wrong arity for ") + op_name(op));
  auto n = std::make_shared<FormulaNode>();
  n->op = op;
  n->children = std::move(children);
  return Formula(std::move(n));
}

Formula Formula::conj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return top();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}

Formula Formula::disj_all(const std::vector<Formula>& parts) {
  if (parts.empty()) return bottom();
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = disj(acc, parts[i]);
  return acc;
}

Op Formula::op() const { return node_->op; }
std::size_t Formula::arity() const { return node_->children.size(); }
const Formula& Formula::child(std::size_t index) const { return node_->children.at(index); }
const std::vector<Formula>& Formula::children() const { return node_ ? node_->children : no_children(); }

const ConstraintAtom& Formula::atom() const {
  if (!node_->atom) throw EvalError("not an atom node");
  return *node_->atom;
}
const LinearTerm& Formula::lhs_term() const { return node_->lhs; }
const LinearTerm& Formula::rhs_term() const { return node_->rhs; }
const TemporalTerm& Formula::target() const { return node_->target; }
std::int64_t Formula::scale() const { return node_->scale; }
const SourceSpan& Formula::span() const { return node_->span; }

Formula Formula::with_span(SourceSpan span) const {
  auto n = std::make_shared<FormulaNode>(*node_);
  n->span = span;
  return Formula(std::move(n));
}

bool Formula::is_core() const {
  if (!thtc::is_core(op())) return false;
  return std::all_of(children().begin(), children().end(), [](const Formula& c) { return c.is_core(); });
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.op != y.op) return false;
  switch (x.op) {
    case Op::Atom: return *x.atom == *y.atom;
    case Op::Eq: case Op::Lt: case Op::Neq: return x.lhs == y.lhs && x.rhs == y.rhs;
    case Op::Df: return x.lhs == y.lhs;
    case Op::Assign: return x.target == y.target && x.rhs == y.rhs && x.scale == y.scale;
    default: return x.children == y.children;
  }
}

Formula desugar(const Formula& f) {
  auto d = [](const Formula& g) { return desugar(g); };
  auto neg = [](Formula g) { return Formula::implies(std::move(g), Formula::bottom()); };
  auto top = [] { return Formula::implies(Formula::bottom(), Formula::bottom()); };
  auto leq = [](const LinearTerm& a, const LinearTerm& b) { return Formula::leq(a, b); };
  auto lt = [&](const LinearTerm& a, const LinearTerm& b) {
    return Formula::conj(leq(a, b), neg(leq(b, a)));
  };
  auto eq = [&](const LinearTerm& a, const LinearTerm& b) { return Formula::conj(leq(a, b), leq(b, a)); };
  auto initial = [&] { return neg(Formula::previous(top())); };
  auto final_state = [&] { return neg(Formula::next(top())); };

  Formula out;
  switch (f.op()) {
    case Op::Atom:
    case Op::Bottom:
      return f;
    case Op::And: case Op::Or: case Op::Implies: case Op::Until: case Op::Release:
    case Op::Since: case Op::Trigger:
      out = Formula::make(f.op(), {d(f.child(0)), d(f.child(1))});
      break;
    case Op::Next: case Op::Previous:
      out = Formula::make(f.op(), {d(f.child(0))});
      break;
    case Op::Top: out = top(); break;
    case Op::Not: out = neg(d(f.child(0))); break;
    case Op::Iff: {
      auto a = d(f.child(0));
      auto b = d(f.child(1));
      out = Formula::conj(Formula::implies(a, b), Formula::implies(b, a));
      break;
    }
    case Op::Initial: out = initial(); break;
    case Op::Final: out = final_state(); break;
    case Op::WeakPrev: out = Formula::disj(Formula::previous(d(f.child(0))), initial()); break;
    case Op::WeakNext: out = Formula::disj(Formula::next(d(f.child(0))), final_state()); break;
    case Op::AlwaysPast: out = Formula::trigger(Formula::bottom(), d(f.child(0))); break;
    case Op::EventuallyPast: out = Formula::since(top(), d(f.child(0))); break;
    case Op::Always: out = Formula::release(Formula::bottom(), d(f.child(0))); break;
    case Op::Eventually: out = Formula::until(top(), d(f.child(0))); break;
    case Op::Eq: out = eq(f.lhs_term(), f.rhs_term()); break;
    case Op::Lt: out = lt(f.lhs_term(), f.rhs_term()); break;
    case Op::Neq:
      out = Formula::disj(lt(f.lhs_term(), f.rhs_term()), lt(f.rhs_term(), f.lhs_term()));
      break;
    case Op::Assign: {
      auto target = LinearTerm::of(f.target(), f.scale());
      out = Formula::implies(desugar(build_df(f.rhs_term())), eq(target, f.rhs_term()));
      break;
    }
    case Op::Df: out = desugar(build_df(f.lhs_term())); break;
  }
  return out.with_span(f.span());
}

namespace {

template <typename Fn>
void for_each_term(const Formula& f, Fn&& fn) {
  auto linear = [&](const LinearTerm& t) {
    for (const auto& s : t.summands())
      if (!s.term.is_one()) fn(s.term);
  };
  switch (f.op()) {
    case Op::Atom:
      for (const auto& t : f.atom().slots()) fn(t);
      return;
    case Op::Eq: case Op::Lt: case Op::Neq:
      linear(f.lhs_term());
      linear(f.rhs_term());
      return;
    case Op::Df:
      linear(f.lhs_term());
      return;
    case Op::Assign:
      fn(f.target());
      linear(f.rhs_term());
      return;
    default:
      for (const auto& c : f.children()) for_each_term(c, fn);
  }
}

}  // namespace

OffsetSpan offset_span(const Formula& formula) {
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  for_each_term(formula, [&](const TemporalTerm& t) {
    lo = std::min(lo, t.offset);
    hi = std::max(hi, t.offset);
  });
  if (lo > hi) return {};
  return {lo, hi};
}

std::set<std::string> variables_of(const Formula& formula) {
  std::set<std::string> out;
  for_each_term(formula, [&](const TemporalTerm& t) { out.insert(t.variable); });
  return out;
}

void collect_atoms(const Formula& formula, std::vector<ConstraintAtom>& out) {
  if (formula.op() == Op::Atom) {
    out.push_back(formula.atom());
    return;
  }
  for (const auto& c : formula.children()) collect_atoms(c, out);
}

Formula Rule::head_formula() const {
  if (head.is_boolean()) return Formula::boolean(head.target);
  return Formula::assign(head.target, *head.value, head.scale);
}

Formula Rule::to_formula() const {
  std::vector<Formula> body = positive_body;
  for (const auto& n : negative_body) body.push_back(Formula::negation(n));
  Formula f = body.empty() ? head_formula() : Formula::implies(Formula::conj_all(body), head_formula());
  return scope == RuleScope::Always ? Formula::always(f) : f;
}

const VariableDecl* Program::find(std::string_view name) const {
  for (const auto& v : variables)
    if (v.name == name) return &v;
  return nullptr;
}

Formula Program::to_formula() const {
  std::vector<Formula> parts;
  parts.reserve(rules.size());
  for (const auto& r : rules) parts.push_back(r.to_formula());
  return Formula::conj_all(parts);
}

}  // namespace thtc
