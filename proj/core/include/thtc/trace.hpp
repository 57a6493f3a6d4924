#pragma once

#include "thtc/error.hpp"
#include "thtc/syntax.hpp"
#include "thtc/value.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace thtc {

/// Mapping from variables to values; absent keys are undefined. ONE is
/// implicitly 1 and never stored.
class PartialValuation {
 public:
  using Map = std::map<std::string, Value, std::less<>>;

  PartialValuation() = default;
  PartialValuation(std::initializer_list<std::pair<const std::string, Value>> entries);

  Value get(std::string_view variable) const;
  /// Setting Undefined erases the entry.
  void set(std::string_view variable, Value value);

  const Map& entries() const { return entries_; }
  std::size_t defined_count() const { return entries_.size(); }

  friend bool operator==(const PartialValuation&, const PartialValuation&) = default;

 private:
  Map entries_;
};

/// Finite sequence of partial valuations, lambda >= 1.
class Trace {
 public:
  explicit Trace(std::size_t length = 1);
  explicit Trace(std::vector<PartialValuation> states);

  std::size_t length() const { return states_.size(); }
  const PartialValuation& at(std::size_t i) const { return states_.at(i); }
  PartialValuation& at(std::size_t i) { return states_.at(i); }
  const std::vector<PartialValuation>& states() const { return states_; }

  /// Number of defined (time, variable) entries.
  std::size_t defined_count() const;

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  std::vector<PartialValuation> states_;
};

/// Value of `term` at time i: v_{i+o}(x) when 0 <= i+o < lambda, else u.
/// Throws EvalError unless 0 <= i < lambda.
Value value_at(const Trace& trace, std::size_t i, const TemporalTerm& term);

/// Same as value_at but takes a signed index and skips the range check on
/// i itself; used by evaluators that already validated i.
Value value_at_unchecked(const Trace& trace, std::int64_t i, const TemporalTerm& term);

/// Information order: every defined entry of `a` has the same value in `b`.
/// Throws EvalError on length mismatch.
bool leq(const Trace& a, const Trace& b);
bool strictly_less(const Trace& a, const Trace& b);

/// Pair of equal-length traces with here ⊑ there, checked on construction.
class HTcTrace {
 public:
  HTcTrace(Trace here, Trace there);
  /// The total pair <t, t>.
  static HTcTrace total(Trace there);

  const Trace& here() const { return here_; }
  const Trace& there() const { return there_; }
  std::size_t length() const { return here_.length(); }

  friend bool operator==(const HTcTrace&, const HTcTrace&) = default;

 private:
  Trace here_;
  Trace there_;
};

/// Defined entries of a trace in canonical (time, variable) order.
struct TraceEntry {
  std::size_t time;
  std::string variable;
  Value value;
};
std::vector<TraceEntry> defined_entries(const Trace& trace);

/// Forward range over every trace strictly below `base` in ⊑, obtained by
/// undefining a nonempty subset of its defined entries (2^d - 1 of them).
class ProperWeakenings {
 public:
  class iterator {
   public:
    using value_type = Trace;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    const Trace& operator*() const { return current_; }
    const Trace* operator->() const { return &current_; }
    iterator& operator++();
    iterator operator++(int) {
      iterator copy = *this;
      ++*this;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.mask_ == b.mask_; }

   private:
    friend class ProperWeakenings;
    iterator(const ProperWeakenings* owner, std::uint64_t mask);
    void materialize();

    const ProperWeakenings* owner_ = nullptr;
    std::uint64_t mask_ = 0;
    Trace current_;
  };

  /// Throws ResourceLimit when the base has more than 62 defined entries.
  explicit ProperWeakenings(Trace base);

  iterator begin() const;
  iterator end() const;
  std::uint64_t size() const { return end_mask_ - 1; }

 private:
  Trace base_;
  std::vector<TraceEntry> entries_;
  std::uint64_t end_mask_ = 1;
};

ProperWeakenings proper_weakenings(const Trace& trace);

}  // namespace thtc
