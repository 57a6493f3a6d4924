#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thtc {

/// Location of a token or construct inside a source text. Lines and columns
/// are 1-based; `begin`/`end` are byte offsets with `end` exclusive.
struct SourceSpan {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (formula, program, trace, domain file).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourceSpan span)
      : Error(message), span_(span) {}

  const SourceSpan& span() const noexcept { return span_; }

 private:
  SourceSpan span_;
};

/// Well-formed input used outside an operation's domain (index out of range,
/// unregistered atom, non-strict atom where a strict one is required, ...).
class EvalError : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration bound was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// The ground program has a cycle through negation that the stratified
/// engine cannot evaluate.
class StratificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace thtc
