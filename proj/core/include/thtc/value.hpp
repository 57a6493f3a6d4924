#pragma once

#include "thtc/rational.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace thtc {

/// A domain value: an exact rational, the Boolean truth constant `t`, or
/// the distinguished undefined value `u`.
class Value {
 public:
  enum class Kind : unsigned char { Undefined, Number, Truth };

  Value() = default;
  Value(Rational number) : kind_(Kind::Number), number_(std::move(number)) {}  // NOLINT
  Value(std::int64_t number) : kind_(Kind::Number), number_(number) {}         // NOLINT

  static Value undefined() { return {}; }
  static Value truth() {
    Value v;
    v.kind_ = Kind::Truth;
    return v;
  }

  /// "t" gives the truth constant, anything Rational::parse accepts gives a
  /// number. The undefined value has no text form.
  static std::optional<Value> parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool defined() const noexcept { return kind_ != Kind::Undefined; }
  bool is_number() const noexcept { return kind_ == Kind::Number; }
  bool is_truth() const noexcept { return kind_ == Kind::Truth; }

  /// Precondition: is_number().
  const Rational& number() const noexcept { return number_; }

  /// "u", "t", or the rational's text.
  std::string to_string() const;

  friend bool operator==(const Value& a, const Value& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != Kind::Number || a.number_ == b.number_;
  }
  /// Canonical total order: u < numbers (by value) < t.
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  Kind kind_ = Kind::Undefined;
  Rational number_;
};

}  // namespace thtc
