#include "thtc/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

namespace thtc {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Leading zeros would select octal in the BigInt string constructor.
Rational::BigInt decimal(std::string_view digits) {
  auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return 0;
  return Rational::BigInt(std::string(digits.substr(first)));
}

Rational::BigInt pow10(std::size_t n) {
  Rational::BigInt r = 1;
  for (std::size_t i = 0; i < n; ++i) r *= 10;
  return r;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  value_ = Big(BigInt(num), BigInt(den));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.value_.is_zero()) throw std::domain_error("division by zero");
  value_ /= o.value_;
  return *this;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  BigInt num;
  BigInt den = 1;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto n = body.substr(0, slash);
    auto d = body.substr(slash + 1);
    if (!all_digits(n) || !all_digits(d)) return std::nullopt;
    num = decimal(n);
    den = decimal(d);
    if (den == 0) return std::nullopt;
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if (!all_digits(whole) || !all_digits(frac)) return std::nullopt;
    num = decimal(std::string(whole) + std::string(frac));
    den = pow10(frac.size());
  } else {
    if (!all_digits(body)) return std::nullopt;
    num = decimal(body);
  }
  if (negative) num = -num;
  return Rational(Big(num, den));
}

Rational::BigInt Rational::numerator() const { return boost::multiprecision::numerator(value_); }
Rational::BigInt Rational::denominator() const { return boost::multiprecision::denominator(value_); }
bool Rational::is_integer() const { return denominator() == 1; }

std::string Rational::to_string() const {
  BigInt num = numerator();
  BigInt den = denominator();
  if (den == 1) return num.str();

  BigInt rest = den;
  std::size_t twos = 0;
  std::size_t fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1) return num.str() + "/" + den.str();

  std::size_t digits = std::max(twos, fives);
  BigInt scaled = num * (pow10(digits) / den);
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s = scaled.str();
  if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
  s.insert(s.size() - digits, ".");
  return negative ? "-" + s : s;
}

std::int64_t lcm_of_denominators(const Rational* first, const Rational* last) {
  Rational::BigInt acc = 1;
  for (; first != last; ++first) acc = boost::multiprecision::lcm(acc, first->denominator());
  if (acc > std::numeric_limits<std::int64_t>::max()) throw std::overflow_error("denominator lcm exceeds 64 bits");
  return static_cast<std::int64_t>(acc);
}

}  // namespace thtc
