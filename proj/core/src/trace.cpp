#include "thtc/trace.hpp"

#include <string>

namespace thtc {

PartialValuation::PartialValuation(std::initializer_list<std::pair<const std::string, Value>> entries) {
  for (const auto& [k, v] : entries) set(k, v);
}

Value PartialValuation::get(std::string_view variable) const {
  if (variable == kOneVariable) return Value(1);
  auto it = entries_.find(variable);
  return it == entries_.end() ? Value::undefined() : it->second;
}

void PartialValuation::set(std::string_view variable, Value value) {
  if (variable == kOneVariable) throw EvalError("the constant pseudo-variable cannot be assigned");
  if (!value.defined()) {
    if (auto it = entries_.find(variable); it != entries_.end()) entries_.erase(it);
    return;
  }
  entries_.insert_or_assign(std::string(variable), std::move(value));
}

Trace::Trace(std::size_t length) : states_(length) {
  if (length == 0) throw EvalError("a trace has at least one state");
}

Trace::Trace(std::vector<PartialValuation> states) : states_(std::move(states)) {
  if (states_.empty()) throw EvalError("a trace has at least one state");
}

std::size_t Trace::defined_count() const {
  std::size_t n = 0;
  for (const auto& s : states_) n += s.defined_count();
  return n;
}

Value value_at_unchecked(const Trace& trace, std::int64_t i, const TemporalTerm& term) {
  if (term.is_one()) return Value(1);
  std::int64_t j = i + term.offset;
  if (j < 0 || j >= static_cast<std::int64_t>(trace.length())) return Value::undefined();
  return trace.at(static_cast<std::size_t>(j)).get(term.variable);
}

Value value_at(const Trace& trace, std::size_t i, const TemporalTerm& term) {
  if (i >= trace.length())
    throw EvalError("time index " + std::to_string(i) + " outside trace of length " + std::to_string(trace.length()));
  return value_at_unchecked(trace, static_cast<std::int64_t>(i), term);
}

namespace {

void require_same_length(const Trace& a, const Trace& b) {
  if (a.length() != b.length())
    throw EvalError("trace lengths differ: " + std::to_string(a.length()) + " vs " + std::to_string(b.length()));
}

}  // namespace

bool leq(const Trace& a, const Trace& b) {
  require_same_length(a, b);
  for (std::size_t i = 0; i < a.length(); ++i)
    for (const auto& [x, v] : a.at(i).entries())
      if (b.at(i).get(x) != v) return false;
  return true;
}

bool strictly_less(const Trace& a, const Trace& b) { return leq(a, b) && a.defined_count() < b.defined_count(); }

HTcTrace::HTcTrace(Trace here, Trace there) : here_(std::move(here)), there_(std::move(there)) {
  if (!leq(here_, there_)) throw EvalError("here trace is not below there trace");
}

HTcTrace HTcTrace::total(Trace there) {
  Trace here = there;
  return HTcTrace(std::move(here), std::move(there));
}

std::vector<TraceEntry> defined_entries(const Trace& trace) {
  std::vector<TraceEntry> out;
  for (std::size_t i = 0; i < trace.length(); ++i)
    for (const auto& [x, v] : trace.at(i).entries()) out.push_back({i, x, v});
  return out;
}

ProperWeakenings::ProperWeakenings(Trace base) : base_(std::move(base)), entries_(defined_entries(base_)) {
  if (entries_.size() > 62)
    throw ResourceLimit("too many defined entries to enumerate weakenings: " + std::to_string(entries_.size()));
  end_mask_ = std::uint64_t{1} << entries_.size();
}

ProperWeakenings::iterator::iterator(const ProperWeakenings* owner, std::uint64_t mask)
    : owner_(owner), mask_(mask) {
  if (mask_ < owner_->end_mask_) materialize();
}

void ProperWeakenings::iterator::materialize() {
  // Bit k set means entry k is undefined in the weakening.
  current_ = owner_->base_;
  for (std::size_t k = 0; k < owner_->entries_.size(); ++k)
    if (mask_ & (std::uint64_t{1} << k)) {
      const auto& e = owner_->entries_[k];
      current_.at(e.time).set(e.variable, Value::undefined());
    }
}

ProperWeakenings::iterator& ProperWeakenings::iterator::operator++() {
  ++mask_;
  if (mask_ < owner_->end_mask_) materialize();
  return *this;
}

ProperWeakenings::iterator ProperWeakenings::begin() const { return iterator(this, 1); }
ProperWeakenings::iterator ProperWeakenings::end() const { return iterator(this, end_mask_); }

ProperWeakenings proper_weakenings(const Trace& trace) { return ProperWeakenings(trace); }

}  // namespace thtc
