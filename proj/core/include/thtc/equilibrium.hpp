#pragma once

#include "thtc/error.hpp"
#include "thtc/semantics.hpp"
#include "thtc/syntax.hpp"
#include "thtc/trace.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace thtc {

enum class Engine : unsigned char { Stratified, Enumerate };

struct SolveOptions {
  std::size_t horizon = 1;
  /// Skip rule instances whose head targets a time outside [0, horizon).
  bool frame_guard = true;
  Engine engine = Engine::Stratified;
  /// Candidate values per variable; overrides the program's declarations.
  std::map<std::string, std::vector<Value>> domains;
  /// Entry limit for the weakening-based minimality oracle.
  std::size_t entry_limit = 20;
  /// Upper bound on candidates the enumeration engine may visit.
  std::uint64_t candidate_limit = std::uint64_t{1} << 22;
  /// Worker threads for enumeration; output order does not depend on it.
  unsigned threads = 1;
};

/// A rule instance at time `time`, with the assignment head unfolded: the
/// df terms of the head value moved into `df_guards`.
struct GroundRule {
  std::size_t time = 0;
  std::size_t rule_index = 0;
  RuleHead head;
  std::vector<Formula> positive;
  std::vector<Formula> negative;
  std::vector<TemporalTerm> df_guards;

  /// Absolute time written by the head. May lie outside [0, lambda).
  std::int64_t target_time() const { return static_cast<std::int64_t>(time) + head.target.offset; }

  /// scale * target = value (or target = t) as a formula.
  Formula head_formula() const;
  /// df_guards, positive, not negative -> head, to be read at `time`.
  Formula to_formula() const;
};

std::vector<GroundRule> ground(const Program& program, const SolveOptions& options);

/// Drops instances with a negative literal true in <candidate, candidate>
/// and strips the negative body from the rest.
std::vector<GroundRule> reduct(const std::vector<GroundRule>& rules, const Trace& candidate);

struct Conflict {
  std::string variable;
  std::int64_t time = 0;
  std::vector<std::string> demands;  // one line per clashing firing
  std::string describe() const;
};

struct FixpointResult {
  std::optional<Trace> trace;
  std::optional<Conflict> conflict;
  bool ok() const { return trace.has_value(); }
};

/// Least partial trace closed under positive rules, starting from all
/// undefined. Precondition: no rule has a negative body.
FixpointResult least_fixpoint(const std::vector<GroundRule>& positive, std::size_t horizon);

/// Candidate satisfies every ground rule and equals the least fixpoint of
/// its reduct. Values outside declared candidate sets fail the check.
bool check_stable(const Program& program, const Trace& candidate, const SolveOptions& options);

struct SolveStats {
  std::size_t ground_rules = 0;
  std::uint64_t candidates_tested = 0;
  Engine engine = Engine::Stratified;
};

struct SolveResult {
  std::vector<Trace> models;  // canonical order
  SolveStats stats;
};

/// Forward chaining in stratum order, then check_stable. Throws
/// StratificationError describing the offending negative cycle.
SolveResult solve_stratified(const Program& program, const SolveOptions& options);

/// Exhaustive search over domains ∪ {u} with the weakening minimality oracle.
/// Throws EvalError when a variable has no candidate set and ResourceLimit
/// beyond candidate_limit.
SolveResult solve_enumerate(const Program& program, const SolveOptions& options);

/// Dispatches on options.engine.
SolveResult solve(const Program& program, const SolveOptions& options);

/// Conjunction of next^time(rule formula) over the ground rules, i.e. the
/// ground program as one formula read at time 0.
Formula ground_program_formula(const std::vector<GroundRule>& rules);

/// Solver output document: {"models": [trace...], "stats": {...}}.
std::string write_solve_result(const SolveResult& result);

const char* engine_name(Engine engine);

}  // namespace thtc
