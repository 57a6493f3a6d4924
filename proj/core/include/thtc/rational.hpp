#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace thtc {

/// Exact rational number, always normalized (gcd 1, positive denominator).
class Rational {
 public:
  using Big = boost::multiprecision::cpp_rational;
  using BigInt = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT: implicit by design of literals
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(Big value) : value_(std::move(value)) {}

  /// Parses "12", "-2.301", "1135/100". Returns nullopt on anything else.
  static std::optional<Rational> parse(std::string_view text);

  /// Exact decimal when the reduced denominator is 2^a*5^b, else "num/den".
  std::string to_string() const;

  BigInt numerator() const;
  BigInt denominator() const;
  bool is_integer() const;
  bool is_zero() const { return value_.is_zero(); }
  const Big& big() const { return value_; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(Big(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Big value_;
};

/// Least common multiple of the denominators of the given rationals,
/// as an int64. Throws std::overflow_error if it does not fit.
std::int64_t lcm_of_denominators(const Rational* first, const Rational* last);

}  // namespace thtc
