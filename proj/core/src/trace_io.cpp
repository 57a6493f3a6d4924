#include "thtc/parser.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

namespace thtc {

namespace {

using nlohmann::json;

SourceSpan whole(std::string_view text) { return {1, 1, 0, text.size()}; }

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    SourceSpan span = whole(text);
    span.begin = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    span.end = std::min(span.begin + 1, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < span.begin; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    span.line = line;
    span.column = col;
    throw ParseError(std::string("malformed document: ") + e.what(), span);
  }
}

Value value_of(const json& v, std::string_view text) {
  std::optional<Value> out;
  if (v.is_string()) out = Value::parse(v.get<std::string>());
  else if (v.is_number_integer()) out = Value(v.get<std::int64_t>());
  if (!out) throw ParseError("non-rational value " + v.dump(), whole(text));
  return *out;
}

Trace trace_of(const json& states, std::size_t length, const char* field, std::string_view text) {
  if (!states.is_array()) throw ParseError(std::string("'") + field + "' must be a list", whole(text));
  if (states.size() != length)
    throw ParseError(std::string("'") + field + "' has " + std::to_string(states.size()) + " states, expected " +
                         std::to_string(length),
                     whole(text));
  std::vector<PartialValuation> out(length);
  for (std::size_t i = 0; i < length; ++i) {
    const auto& s = states[i];
    if (!s.is_object()) throw ParseError(std::string("state ") + std::to_string(i) + " must be a mapping", whole(text));
    for (const auto& [k, v] : s.items()) {
      if (!valid_identifier(k)) throw ParseError("invalid variable name '" + k + "'", whole(text));
      out[i].set(k, value_of(v, text));
    }
  }
  return Trace(std::move(out));
}

void write_states(std::ostringstream& os, const Trace& t) {
  os << "[";
  for (std::size_t i = 0; i < t.length(); ++i) {
    os << (i ? ",\n    {" : "\n    {");
    bool first = true;
    for (const auto& [k, v] : t.at(i).entries()) {
      os << (first ? "" : ", ") << json(k).dump() << ": " << json(v.to_string()).dump();
      first = false;
    }
    os << "}";
  }
  os << "\n  ]";
}

}  // namespace

HTcTrace parse_trace(std::string_view text) {
  json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("trace document must be a mapping", whole(text));
  if (!doc.contains("length") || !doc["length"].is_number_integer() || doc["length"].get<std::int64_t>() < 1)
    throw ParseError("'length' must be a positive integer", whole(text));
  auto length = static_cast<std::size_t>(doc["length"].get<std::int64_t>());
  for (const char* f : {"here", "there"})
    if (!doc.contains(f)) throw ParseError(std::string("missing field '") + f + "'", whole(text));
  Trace here = trace_of(doc["here"], length, "here", text);
  Trace there = trace_of(doc["there"], length, "there", text);
  if (!leq(here, there)) throw ParseError("here trace is not below there trace", whole(text));
  return HTcTrace(std::move(here), std::move(there));
}

std::map<std::string, std::vector<Value>> parse_domains(std::string_view text) {
  json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("domain document must be a mapping", whole(text));
  std::map<std::string, std::vector<Value>> out;
  for (const auto& [k, v] : doc.items()) {
    if (!valid_identifier(k)) throw ParseError("invalid variable name '" + k + "'", whole(text));
    if (!v.is_array() || v.empty()) throw ParseError("domain of '" + k + "' must be a nonempty list", whole(text));
    auto& d = out[k];
    for (const auto& x : v) d.push_back(value_of(x, text));
  }
  return out;
}

std::string write_trace(const HTcTrace& trace) {
  std::ostringstream os;
  os << "{\n  \"length\": " << trace.length() << ",\n  \"here\": ";
  write_states(os, trace.here());
  os << ",\n  \"there\": ";
  write_states(os, trace.there());
  os << "\n}\n";
  return os.str();
}

std::string write_trace(const Trace& trace) { return write_trace(HTcTrace::total(trace)); }

}  // namespace thtc
