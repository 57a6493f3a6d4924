#include "thtc/equilibrium.hpp"

#include "thtc/constraints.hpp"
#include "thtc/parser.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

namespace thtc {

namespace {

using Cell = std::pair<std::string, std::int64_t>;  // (variable, absolute time)

Formula wrap_next(Formula f, std::size_t times) {
  for (std::size_t k = 0; k < times; ++k) f = Formula::next(std::move(f));
  return f;
}

void require_horizon(const SolveOptions& options) {
  if (options.horizon == 0) throw EvalError("horizon must be at least 1");
}

// Literal formulas are shared across every instance of a rule, so the core
// forms are cached by node identity.
class CoreCache {
 public:
  const Formula& operator()(const Formula& f) {
    auto it = cache_.find(f.identity());
    if (it == cache_.end()) it = cache_.emplace(f.identity(), std::make_pair(f, desugar(f))).first;
    return it->second.second;
  }

 private:
  std::unordered_map<const void*, std::pair<Formula, Formula>> cache_;
};

bool holds_here(const Trace& state, std::size_t time, const Formula& core) {
  return satisfies_core(state, state, time, core);
}

bool guards_hold(const GroundRule& r, const Trace& state) {
  for (const auto& g : r.df_guards)
    if (!value_at_unchecked(state, static_cast<std::int64_t>(r.time), g).defined()) return false;
  return true;
}

bool positive_hold(const GroundRule& r, const Trace& state, CoreCache& cores) {
  for (const auto& l : r.positive)
    if (!holds_here(state, r.time, cores(l))) return false;
  return true;
}

bool some_negative_holds(const GroundRule& r, const Trace& state, CoreCache& cores) {
  for (const auto& l : r.negative)
    if (holds_here(state, r.time, cores(l))) return true;
  return false;
}

// Value the head assigns under `state`; precondition: guards hold.
Value head_value(const GroundRule& r, const Trace& state) {
  if (r.head.is_boolean()) return Value::truth();
  const auto& value = *r.head.value;
  std::vector<Value> slots;
  for (const auto& s : value.summands())
    if (!s.term.is_one()) slots.push_back(value_at_unchecked(state, static_cast<std::int64_t>(r.time), s.term));
  Value v = evaluate_linear(value, slots);
  if (!v.is_number()) return Value::undefined();
  return Value(v.number() / Rational(r.head.scale));
}

std::string describe_firing(const GroundRule& r, const Value& v) {
  return "rule " + std::to_string(r.rule_index + 1) + " at time " + std::to_string(r.time) + " sets " +
         r.head.target.variable + "@" + std::to_string(r.target_time()) + " = " + v.to_string();
}

// Fires `r` on `state` if it is applicable and its head is in range.
// Returns false on a conflict (filled into `conflict`).
bool fire(const GroundRule& r, Trace& state, std::map<Cell, std::string>& origin, bool& changed,
          std::optional<Conflict>& conflict) {
  std::int64_t j = r.target_time();
  if (j < 0 || j >= static_cast<std::int64_t>(state.length())) return true;
  Value v = head_value(r, state);
  if (!v.defined()) return true;
  auto& s = state.at(static_cast<std::size_t>(j));
  Value cur = s.get(r.head.target.variable);
  if (!cur.defined()) {
    s.set(r.head.target.variable, v);
    origin[{r.head.target.variable, j}] = describe_firing(r, v);
    changed = true;
    return true;
  }
  if (cur == v) return true;
  Conflict c;
  c.variable = r.head.target.variable;
  c.time = j;
  c.demands = {origin[{r.head.target.variable, j}], describe_firing(r, v)};
  conflict = std::move(c);
  return false;
}

const std::vector<Value>* domain_of(const Program& program, const SolveOptions& options, const std::string& x) {
  if (auto it = options.domains.find(x); it != options.domains.end()) return &it->second;
  const auto* d = program.find(x);
  if (d && d->candidates) return &*d->candidates;
  static const std::vector<Value> truth{Value::truth()};
  if (d && d->sort == Sort::Boolean) return &truth;
  return nullptr;
}

bool respects_declarations(const Program& program, const Trace& candidate, const SolveOptions& options) {
  for (const auto& e : defined_entries(candidate)) {
    const auto* d = program.find(e.variable);
    if (!d) return false;
    if ((d->sort == Sort::Boolean) != e.value.is_truth()) return false;
    if (const auto* dom = domain_of(program, options, e.variable))
      if (std::find(dom->begin(), dom->end(), e.value) == dom->end()) return false;
  }
  return true;
}

void literal_cells(const Formula& f, std::size_t time, std::int64_t horizon, std::vector<Cell>& out) {
  std::vector<TemporalTerm> terms;
  auto add_linear = [&](const LinearTerm& t) {
    for (const auto& s : t.summands())
      if (!s.term.is_one()) terms.push_back(s.term);
  };
  if (f.op() == Op::Atom) {
    for (const auto& t : f.atom().slots()) terms.push_back(t);
  } else {
    add_linear(f.lhs_term());
    add_linear(f.rhs_term());
  }
  for (const auto& t : terms) {
    std::int64_t j = static_cast<std::int64_t>(time) + t.offset;
    if (j >= 0 && j < horizon) out.push_back({t.variable, j});
  }
}

std::string canonical_key(const Trace& t) { return write_trace(t); }

void sort_models(std::vector<Trace>& models) {
  std::sort(models.begin(), models.end(),
            [](const Trace& a, const Trace& b) { return canonical_key(a) < canonical_key(b); });
}

}  // namespace

Formula GroundRule::head_formula() const {
  if (head.is_boolean()) return Formula::boolean(head.target);
  return Formula::eq(LinearTerm::of(head.target, head.scale), *head.value);
}

Formula GroundRule::to_formula() const {
  std::vector<Formula> body;
  for (const auto& g : df_guards) body.push_back(Formula::leq(LinearTerm::of(g), LinearTerm::of(g)));
  for (const auto& p : positive) body.push_back(p);
  for (const auto& n : negative) body.push_back(Formula::negation(n));
  if (body.empty()) return head_formula();
  return Formula::implies(Formula::conj_all(body), head_formula());
}

std::vector<GroundRule> ground(const Program& program, const SolveOptions& options) {
  require_horizon(options);
  std::vector<GroundRule> out;
  auto lambda = static_cast<std::int64_t>(options.horizon);
  for (std::size_t r = 0; r < program.rules.size(); ++r) {
    const Rule& rule = program.rules[r];
    std::size_t last = rule.scope == RuleScope::Always ? options.horizon : 1;
    for (std::size_t i = 0; i < last; ++i) {
      GroundRule g;
      g.time = i;
      g.rule_index = r;
      g.head = rule.head;
      g.positive = rule.positive_body;
      g.negative = rule.negative_body;
      if (rule.head.value) g.df_guards = terms_of(*rule.head.value);
      std::int64_t j = g.target_time();
      if (options.frame_guard && (j < 0 || j >= lambda)) continue;
      out.push_back(std::move(g));
    }
  }
  return out;
}

std::vector<GroundRule> reduct(const std::vector<GroundRule>& rules, const Trace& candidate) {
  CoreCache cores;
  std::vector<GroundRule> out;
  for (const auto& r : rules) {
    if (some_negative_holds(r, candidate, cores)) continue;
    GroundRule kept = r;
    kept.negative.clear();
    out.push_back(std::move(kept));
  }
  return out;
}

std::string Conflict::describe() const {
  std::string s = "conflicting values for " + variable + "@" + std::to_string(time) + ":";
  for (const auto& d : demands) s += "\n  " + d;
  return s;
}

FixpointResult least_fixpoint(const std::vector<GroundRule>& positive, std::size_t horizon) {
  if (horizon == 0) throw EvalError("horizon must be at least 1");
  CoreCache cores;
  Trace state(horizon);
  std::map<Cell, std::string> origin;
  std::vector<bool> fired(positive.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < positive.size(); ++k) {
      const auto& r = positive[k];
      if (!r.negative.empty()) throw EvalError("least_fixpoint expects a positive program");
      if (fired[k] || !guards_hold(r, state) || !positive_hold(r, state, cores)) continue;
      fired[k] = true;
      std::optional<Conflict> conflict;
      if (!fire(r, state, origin, changed, conflict)) return {std::nullopt, std::move(conflict)};
    }
  }
  return {std::move(state), std::nullopt};
}

bool check_stable(const Program& program, const Trace& candidate, const SolveOptions& options) {
  require_horizon(options);
  if (candidate.length() != options.horizon) return false;
  if (!respects_declarations(program, candidate, options)) return false;
  auto rules = ground(program, options);
  for (const auto& r : rules)
    if (!satisfies(candidate, candidate, r.time, r.to_formula())) return false;
  auto fix = least_fixpoint(reduct(rules, candidate), options.horizon);
  return fix.ok() && *fix.trace == candidate;
}

SolveResult solve_stratified(const Program& program, const SolveOptions& options) {
  require_horizon(options);
  auto rules = ground(program, options);
  auto lambda = static_cast<std::int64_t>(options.horizon);
  SolveResult result;
  result.stats.ground_rules = rules.size();
  result.stats.engine = Engine::Stratified;

  std::map<Cell, std::size_t> ids;
  std::vector<Cell> cells;
  auto id_of = [&](const Cell& c) {
    auto [it, inserted] = ids.emplace(c, cells.size());
    if (inserted) cells.push_back(c);
    return it->second;
  };

  struct Edge {
    std::size_t to;
    bool negative;
  };
  std::vector<std::vector<Edge>> edges;
  std::vector<std::optional<std::size_t>> head_of(rules.size());
  for (std::size_t k = 0; k < rules.size(); ++k) {
    const auto& r = rules[k];
    std::int64_t j = r.target_time();
    if (j < 0 || j >= lambda) continue;
    std::size_t h = id_of({r.head.target.variable, j});
    head_of[k] = h;
    std::vector<Cell> pos;
    std::vector<Cell> neg;
    for (const auto& g : r.df_guards) {
      std::int64_t t = static_cast<std::int64_t>(r.time) + g.offset;
      if (t >= 0 && t < lambda) pos.push_back({g.variable, t});
    }
    for (const auto& l : r.positive) literal_cells(l, r.time, lambda, pos);
    for (const auto& l : r.negative) literal_cells(l, r.time, lambda, neg);
    for (auto& c : pos) {
      std::size_t d = id_of(c);
      if (edges.size() < cells.size()) edges.resize(cells.size());
      edges[h].push_back({d, false});
    }
    for (auto& c : neg) {
      std::size_t d = id_of(c);
      if (edges.size() < cells.size()) edges.resize(cells.size());
      edges[h].push_back({d, true});
    }
  }
  edges.resize(cells.size());

  // Tarjan; components come out dependencies first.
  std::size_t n = cells.size();
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const auto& e : edges[v]) {
      if (index[e.to] == SIZE_MAX) {
        visit(e.to);
        low[v] = std::min(low[v], low[e.to]);
      } else if (on_stack[e.to]) {
        low[v] = std::min(low[v], index[e.to]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> c;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = components.size();
        c.push_back(w);
      } while (w != v);
      components.push_back(std::move(c));
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] == SIZE_MAX) visit(v);

  auto cell_name = [&](std::size_t v) { return cells[v].first + "@" + std::to_string(cells[v].second); };

  // Classify rules: ordinary, or a default (negative self-loop on a
  // singleton component).
  std::vector<std::vector<std::size_t>> ordinary(components.size());
  std::vector<std::optional<std::size_t>> default_rule(components.size());
  for (std::size_t k = 0; k < rules.size(); ++k) {
    if (!head_of[k]) continue;
    std::size_t h = *head_of[k];
    std::size_t c = comp[h];
    std::vector<Cell> neg;
    for (const auto& l : rules[k].negative) literal_cells(l, rules[k].time, lambda, neg);
    bool is_default = false;
    for (const auto& cell : neg) {
      std::size_t d = ids.at(cell);
      if (comp[d] != c) continue;
      if (d == h && components[c].size() == 1) {
        is_default = true;
        continue;
      }
      throw StratificationError("negative dependency of " + cell_name(h) + " on " + cell_name(d) +
                                " inside a cycle (rule " + std::to_string(rules[k].rule_index + 1) + " at time " +
                                std::to_string(rules[k].time) + ")");
    }
    if (is_default) {
      if (default_rule[c])
        throw StratificationError("more than one default rule for " + cell_name(h));
      default_rule[c] = k;
    } else {
      ordinary[c].push_back(k);
    }
  }

  CoreCache cores;
  Trace state(options.horizon);
  std::map<Cell, std::string> origin;
  result.stats.candidates_tested = 1;
  for (std::size_t c = 0; c < components.size(); ++c) {
    auto applicable = [&](std::size_t k) {
      const auto& r = rules[k];
      return guards_hold(r, state) && positive_hold(r, state, cores) && !some_negative_holds(r, state, cores);
    };
    bool changed = true;
    std::vector<bool> fired(ordinary[c].size(), false);
    while (changed) {
      changed = false;
      for (std::size_t q = 0; q < ordinary[c].size(); ++q) {
        if (fired[q] || !applicable(ordinary[c][q])) continue;
        fired[q] = true;
        std::optional<Conflict> conflict;
        if (!fire(rules[ordinary[c][q]], state, origin, changed, conflict)) return result;
      }
    }
    if (default_rule[c] && applicable(*default_rule[c])) {
      std::optional<Conflict> conflict;
      if (!fire(rules[*default_rule[c]], state, origin, changed, conflict)) return result;
    }
  }
  if (check_stable(program, state, options)) result.models.push_back(std::move(state));
  return result;
}

SolveResult solve_enumerate(const Program& program, const SolveOptions& options) {
  require_horizon(options);
  auto rules = ground(program, options);
  SolveResult result;
  result.stats.ground_rules = rules.size();
  result.stats.engine = Engine::Enumerate;

  struct Slot {
    std::size_t time;
    std::string variable;
    const std::vector<Value>* domain;
  };
  std::vector<Slot> slots;
  std::vector<std::vector<Value>> domains;
  domains.reserve(program.variables.size());
  for (const auto& v : program.variables) {
    const auto* d = domain_of(program, options, v.name);
    if (!d) throw EvalError("no candidate values for variable '" + v.name + "'");
    std::vector<Value> dom = *d;
    std::sort(dom.begin(), dom.end());
    dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
    domains.push_back(std::move(dom));
  }
  for (std::size_t i = 0; i < options.horizon; ++i)
    for (std::size_t k = 0; k < program.variables.size(); ++k)
      slots.push_back({i, program.variables[k].name, &domains[k]});

  std::uint64_t total = 1;
  for (const auto& s : slots) {
    std::uint64_t base = s.domain->size() + 1;
    if (total > options.candidate_limit / base)
      throw ResourceLimit("candidate space exceeds the limit of " + std::to_string(options.candidate_limit));
    total *= base;
  }

  const Formula core = desugar(ground_program_formula(rules));
  EvalContext ctx;
  auto decode = [&](std::uint64_t code) {
    Trace t(options.horizon);
    for (const auto& s : slots) {
      std::uint64_t base = s.domain->size() + 1;
      std::uint64_t digit = code % base;
      code /= base;
      if (digit > 0) t.at(s.time).set(s.variable, (*s.domain)[digit - 1]);
    }
    return t;
  };
  auto equilibrium = [&](const Trace& c) {
    if (!satisfies_core(c, c, 0, core, ctx)) return false;
    if (c.defined_count() > options.entry_limit)
      throw ResourceLimit("candidate has more defined entries than the minimality limit");
    for (const Trace& h : proper_weakenings(c))
      if (satisfies_core(h, c, 0, core, ctx)) return false;
    return true;
  };

  unsigned threads = std::max(1u, options.threads);
  std::vector<std::vector<Trace>> found(threads);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned w) {
    try {
      for (std::uint64_t code = w; code < total; code += threads) {
        Trace c = decode(code);
        if (equilibrium(c)) found[w].push_back(std::move(c));
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (auto& f : found)
    for (auto& t : f) result.models.push_back(std::move(t));
  sort_models(result.models);
  result.stats.candidates_tested = total;
  return result;
}

SolveResult solve(const Program& program, const SolveOptions& options) {
  return options.engine == Engine::Stratified ? solve_stratified(program, options) : solve_enumerate(program, options);
}

Formula ground_program_formula(const std::vector<GroundRule>& rules) {
  std::vector<Formula> parts;
  parts.reserve(rules.size());
  for (const auto& r : rules) parts.push_back(wrap_next(r.to_formula(), r.time));
  return Formula::conj_all(parts);
}

const char* engine_name(Engine engine) { return engine == Engine::Stratified ? "stratified" : "enumerate"; }

std::string write_solve_result(const SolveResult& result) {
  using nlohmann::json;
  json doc;
  doc["models"] = json::array();
  for (const auto& m : result.models) doc["models"].push_back(json::parse(write_trace(m)));
  doc["stats"] = {{"ground_rules", result.stats.ground_rules},
                  {"candidates_tested", result.stats.candidates_tested},
                  {"engine", engine_name(result.stats.engine)}};
  return doc.dump(2) + "\n";
}

}  // namespace thtc
