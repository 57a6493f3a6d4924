#pragma once

#include "thtc/error.hpp"
#include "thtc/syntax.hpp"
#include "thtc/trace.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace thtc {

/// Formula text (.thtc). Precedence, tightest first: unary operators,
/// comparisons, binary temporal operators (U R S T, right-assoc), `&`, `|`,
/// `->` (right-assoc), `<->`. Throws ParseError.
Formula parse_formula(std::string_view text);

/// Program text (.tlp): `var` declarations followed by rules. Throws
/// ParseError on syntax errors, undeclared or duplicate variables, sort
/// misuse and ill-formed heads.
Program parse_program(std::string_view text);

/// Trace document (.trace): {"length": n, "here": [...], "there": [...]}
/// where each state maps variables to decimal strings or "t". Throws
/// ParseError on malformed documents, length mismatch or here ⋢ there.
HTcTrace parse_trace(std::string_view text);

/// Domain file: {"x": ["0", "1"], ...}. Throws ParseError.
std::map<std::string, std::vector<Value>> parse_domains(std::string_view text);

/// Trace document text with sorted keys, two-space indent.
std::string write_trace(const HTcTrace& trace);
/// The total pair <t, t>.
std::string write_trace(const Trace& trace);

}  // namespace thtc
