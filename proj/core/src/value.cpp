#include "thtc/value.hpp"

namespace thtc {

std::optional<Value> Value::parse(std::string_view text) {
  if (text == "t") return truth();
  if (auto r = Rational::parse(text)) return Value(std::move(*r));
  return std::nullopt;
}

std::string Value::to_string() const {
  switch (kind_) {
    case Kind::Undefined: return "u";
    case Kind::Truth: return "t";
    case Kind::Number: return number_.to_string();
  }
  return "u";
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) {
    auto rank = [](Value::Kind k) {
      switch (k) {
        case Value::Kind::Undefined: return 0;
        case Value::Kind::Number: return 1;
        case Value::Kind::Truth: return 2;
      }
      return 0;
    };
    return rank(a.kind_) <=> rank(b.kind_);
  }
  if (a.kind_ == Value::Kind::Number) return a.number_ <=> b.number_;
  return std::strong_ordering::equal;
}

}  // namespace thtc
