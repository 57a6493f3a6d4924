#include "thtc/parser.hpp"

#include "thtc/constraints.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace thtc {

namespace {

enum class Tok : unsigned char { Ident, Number, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

const std::set<std::string, std::less<>>& formula_keywords() {
  static const std::set<std::string, std::less<>> k = {
      "not", "true", "false", "X", "U", "R", "Y", "S", "T", "G", "F", "H", "P",
      "I", "Fin", "wX", "wY", "df", "compl", "next", "prev"};
  return k;
}

const std::set<std::string, std::less<>>& program_keywords() {
  static const std::set<std::string, std::less<>> k = {"var", "always", "in", "rational", "boolean"};
  return k;
}

std::vector<Token> lex(std::string_view text) {
  static constexpr std::array<std::string_view, 24> symbols = {
      "<->", "->", ":-", ":=", "<=", ">=", "!=", "<", ">", "=", "&", "|",
      "(", ")", ",", ".", "@", "+", "-", "*", ":", "{", "}", "/"};
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t line = 1;
  std::size_t col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.span = {line, col, i, i};
    std::size_t start = i;
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      t.kind = Tok::Ident;
      advance(j - i);
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j + 1 < text.size() && text[j] == '.' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      t.kind = Tok::Number;
      advance(j - i);
    } else {
      bool matched = false;
      for (auto s : symbols) {
        if (text.substr(i, s.size()) == s) {
          t.kind = Tok::Symbol;
          advance(s.size());
          matched = true;
          break;
        }
      }
      if (!matched) {
        t.span.end = i + 1;
        throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", t.span);
      }
    }
    t.text = std::string(text.substr(start, i - start));
    t.span.end = i;
    out.push_back(std::move(t));
  }
  Token end;
  end.span = {line, col, text.size(), text.size()};
  out.push_back(end);
  return out;
}

SourceSpan join(const SourceSpan& a, const SourceSpan& b) { return {a.line, a.column, a.begin, b.end}; }

struct RawSummand {
  Rational coefficient;
  TemporalTerm term;
  SourceSpan span;
};

using RawLinear = std::vector<RawSummand>;

std::pair<LinearTerm, LinearTerm> clear_denominators(const RawLinear& a, const RawLinear& b, const SourceSpan& span) {
  std::vector<Rational> coeffs;
  for (const auto* side : {&a, &b})
    for (const auto& s : *side) coeffs.push_back(s.coefficient);
  std::int64_t m = 1;
  try {
    m = lcm_of_denominators(coeffs.data(), coeffs.data() + coeffs.size());
  } catch (const std::overflow_error&) {
    throw ParseError("coefficients too large", span);
  }
  auto convert = [&](const RawLinear& side) {
    std::vector<Summand> out;
    for (const auto& s : side) {
      Rational scaled = s.coefficient * Rational(m);
      if (scaled.numerator() > std::numeric_limits<std::int64_t>::max() ||
          scaled.numerator() < std::numeric_limits<std::int64_t>::min())
        throw ParseError("coefficient out of range", s.span);
      out.push_back({static_cast<std::int64_t>(scaled.numerator()), s.term});
    }
    return LinearTerm(std::move(out));
  };
  return {convert(a), convert(b)};
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), toks_(lex(text)) {}

  // --- Formulas --------------------------------------------------------------

  Formula formula() { return iff(); }

  bool at_end() const { return peek().kind == Tok::End; }

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

  bool is_symbol(std::string_view s, std::size_t k = 0) const {
    const auto& t = peek(k);
    return t.kind == Tok::Symbol && t.text == s;
  }

  bool is_ident(std::string_view s, std::size_t k = 0) const {
    const auto& t = peek(k);
    return t.kind == Tok::Ident && t.text == s;
  }

  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const std::string& message, const Token& at) const {
    throw ParseError(message + (at.kind == Tok::End ? " at end of input" : " near '" + at.text + "'"), at.span);
  }

  const Token& expect(std::string_view s) {
    if (!is_symbol(s)) fail("expected '" + std::string(s) + "'", peek());
    return take();
  }

  Formula iff() {
    auto start = peek().span;
    Formula f = implies();
    while (is_symbol("<->")) {
      take();
      Formula g = implies();
      f = Formula::iff(f, g).with_span(join(start, prev_span()));
    }
    return f;
  }

  Formula implies() {
    auto start = peek().span;
    Formula f = disjunction();
    if (is_symbol("->")) {
      take();
      Formula g = implies();
      return Formula::implies(f, g).with_span(join(start, prev_span()));
    }
    return f;
  }

  Formula disjunction() {
    auto start = peek().span;
    Formula f = conjunction();
    while (is_symbol("|")) {
      take();
      Formula g = conjunction();
      f = Formula::disj(f, g).with_span(join(start, prev_span()));
    }
    return f;
  }

  Formula conjunction() {
    auto start = peek().span;
    Formula f = temporal();
    while (is_symbol("&")) {
      take();
      Formula g = temporal();
      f = Formula::conj(f, g).with_span(join(start, prev_span()));
    }
    return f;
  }

  Formula temporal() {
    auto start = peek().span;
    Formula f = unary();
    static const std::map<std::string, Op, std::less<>> ops = {
        {"U", Op::Until}, {"R", Op::Release}, {"S", Op::Since}, {"T", Op::Trigger}};
    if (peek().kind == Tok::Ident) {
      if (auto it = ops.find(peek().text); it != ops.end()) {
        take();
        Formula g = temporal();
        return Formula::make(it->second, {f, g}).with_span(join(start, prev_span()));
      }
    }
    return f;
  }

  Formula unary() {
    static const std::map<std::string, Op, std::less<>> ops = {
        {"not", Op::Not}, {"X", Op::Next}, {"Y", Op::Previous}, {"G", Op::Always},
        {"F", Op::Eventually}, {"H", Op::AlwaysPast}, {"P", Op::EventuallyPast},
        {"wX", Op::WeakNext}, {"wY", Op::WeakPrev}};
    if (peek().kind == Tok::Ident) {
      if (auto it = ops.find(peek().text); it != ops.end()) {
        auto start = take().span;
        Formula f = unary();
        return Formula::make(it->second, {f}).with_span(join(start, prev_span()));
      }
    }
    return primary();
  }

  Formula primary() {
    const Token& t = peek();
    auto start = t.span;
    if (is_symbol("(")) {
      take();
      Formula f = formula();
      expect(")");
      return f.with_span(join(start, prev_span()));
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "true") return take(), Formula::top().with_span(start);
      if (t.text == "false") return take(), Formula::bottom().with_span(start);
      if (t.text == "I") return take(), Formula::initial().with_span(start);
      if (t.text == "Fin") return take(), Formula::final_state().with_span(start);
      if (t.text == "df") {
        take();
        expect("(");
        RawLinear a = linear();
        expect(")");
        auto [l, unused] = clear_denominators(a, {}, start);
        return Formula::df(l).with_span(join(start, prev_span()));
      }
      if (t.text == "compl") {
        take();
        expect("(");
        Formula inner = primary();
        expect(")");
        if (inner.op() != Op::Atom) fail("compl expects a constraint atom", peek());
        return Formula::atom(ConstraintAtom::complement_of(inner.atom()), join(start, prev_span()));
      }
      if (t.text != "next" && t.text != "prev" && !formula_keywords().count(t.text) && is_symbol("(", 1)) {
        std::string name = take().text;
        take();
        std::vector<TemporalTerm> args;
        if (!is_symbol(")")) {
          args.push_back(term());
          while (is_symbol(",")) {
            take();
            args.push_back(term());
          }
        }
        expect(")");
        return Formula::atom(ConstraintAtom::custom(name, std::move(args)), join(start, prev_span()));
      }
    }
    return comparison(true);
  }

  // comparison | bool-term | (allow_assign) [k*]term := linear
  Formula comparison(bool allow_assign) {
    auto start = peek().span;
    if (!starts_linear()) fail("expected a formula", peek());
    RawLinear lhs = linear();
    if (is_symbol(":=")) {
      if (!allow_assign) fail("assignment not allowed here", peek());
      take();
      auto [scale, target] = assignment_target(lhs, start);
      RawLinear rhs = linear();
      auto span = join(start, prev_span());
      RawLinear left = {{scale, target, start}};
      auto [l, r] = clear_denominators(left, rhs, span);
      return Formula::assign(target, r, l.summands()[0].coefficient).with_span(span);
    }
    static const std::set<std::string, std::less<>> cmps = {"<=", "<", ">=", ">", "=", "!="};
    if (peek().kind == Tok::Symbol && cmps.count(peek().text)) {
      std::string op = take().text;
      RawLinear rhs = linear();
      auto span = join(start, prev_span());
      auto [l, r] = clear_denominators(lhs, rhs, span);
      Formula f;
      if (op == "<=") f = Formula::atom(ConstraintAtom::leq(l, r));
      else if (op == ">=") f = Formula::atom(ConstraintAtom::leq(r, l));
      else if (op == "<") f = Formula::lt(l, r);
      else if (op == ">") f = Formula::lt(r, l);
      else if (op == "=") f = Formula::eq(l, r);
      else f = Formula::neq(l, r);
      return f.with_span(span);
    }
    if (lhs.size() == 1 && lhs[0].coefficient == Rational(1) && !lhs[0].term.is_one())
      return Formula::boolean(lhs[0].term).with_span(join(start, prev_span()));
    fail("expected a comparison operator", peek());
  }

  std::pair<Rational, TemporalTerm> assignment_target(const RawLinear& lhs, const SourceSpan& span) {
    if (lhs.size() != 1 || lhs[0].term.is_one() || lhs[0].coefficient <= Rational(0))
      throw ParseError("assignment target must be a term with an optional positive factor", span);
    return {lhs[0].coefficient, lhs[0].term};
  }

  bool starts_linear() const {
    const auto& t = peek();
    if (t.kind == Tok::Number) return true;
    if (t.kind == Tok::Symbol) return t.text == "-" || t.text == "+";
    if (t.kind == Tok::Ident) return t.text == "next" || t.text == "prev" || !formula_keywords().count(t.text);
    return false;
  }

  RawLinear linear() {
    RawLinear out;
    bool negative = false;
    if (is_symbol("-") || is_symbol("+")) negative = take().text == "-";
    out.push_back(summand(negative));
    while (is_symbol("+") || is_symbol("-")) {
      negative = take().text == "-";
      out.push_back(summand(negative));
    }
    return out;
  }

  RawSummand summand(bool negative) {
    auto start = peek().span;
    RawSummand s;
    if (peek().kind == Tok::Number) {
      auto r = Rational::parse(take().text);
      if (!r) fail("malformed number", toks_[pos_ - 1]);
      s.coefficient = *r;
      if (is_symbol("*")) {
        take();
        s.term = term();
      } else {
        s.term = TemporalTerm::one();
      }
    } else {
      s.coefficient = Rational(1);
      s.term = term();
    }
    if (negative) s.coefficient = -s.coefficient;
    s.span = join(start, prev_span());
    return s;
  }

  TemporalTerm term() {
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail("expected a variable", t);
    if (t.text == "next" || t.text == "prev") {
      int by = t.text == "next" ? 1 : -1;
      take();
      expect("(");
      TemporalTerm inner = term();
      expect(")");
      return inner.shifted(by);
    }
    if (formula_keywords().count(t.text) || (in_program_ && program_keywords().count(t.text)))
      fail("reserved word used as a variable", t);
    TemporalTerm out{take().text, 0};
    if (is_symbol("@")) {
      take();
      bool negative = false;
      if (is_symbol("-") || is_symbol("+")) negative = take().text == "-";
      const Token& n = peek();
      if (n.kind != Tok::Number || n.text.find('.') != std::string::npos) fail("malformed offset", n);
      long long v = 0;
      try {
        v = std::stoll(n.text);
      } catch (const std::exception&) {
        fail("malformed offset", n);
      }
      if (v > (1 << 20)) fail("offset too large", n);
      take();
      out.offset = static_cast<int>(negative ? -v : v);
    }
    return out;
  }

  SourceSpan prev_span() const { return pos_ == 0 ? toks_[0].span : toks_[pos_ - 1].span; }

  // --- Programs --------------------------------------------------------------

  Program program() {
    in_program_ = true;
    Program p;
    while (!at_end()) {
      if (is_ident("var") && peek(1).kind == Tok::Ident) {
        declaration(p);
      } else {
        p.rules.push_back(rule(p));
      }
    }
    return p;
  }

  void declaration(Program& p) {
    take();
    std::vector<Token> names;
    names.push_back(identifier());
    while (is_symbol(",")) {
      take();
      names.push_back(identifier());
    }
    expect(":");
    Sort sort;
    if (is_ident("rational")) sort = Sort::Rational;
    else if (is_ident("boolean")) sort = Sort::Boolean;
    else fail("expected 'rational' or 'boolean'", peek());
    take();
    std::optional<std::vector<Value>> candidates;
    if (is_ident("in")) {
      take();
      expect("{");
      candidates.emplace();
      if (!is_symbol("}")) {
        candidates->push_back(candidate(sort));
        while (is_symbol(",")) {
          take();
          candidates->push_back(candidate(sort));
        }
      }
      expect("}");
      if (candidates->empty()) fail("candidate set must be nonempty", toks_[pos_ - 1]);
    }
    expect(".");
    for (const auto& n : names) {
      if (p.find(n.text)) throw ParseError("duplicate declaration of '" + n.text + "'", n.span);
      p.variables.push_back({n.text, sort, candidates});
    }
  }

  const Token& identifier() {
    const auto& t = peek();
    if (t.kind != Tok::Ident || formula_keywords().count(t.text) || program_keywords().count(t.text))
      fail("expected a variable name", t);
    return take();
  }

  Value candidate(Sort sort) {
    const auto start = peek();
    std::string text;
    if (is_symbol("-")) text = take().text;
    const Token& t = take();
    text += t.text;
    auto v = Value::parse(text);
    if (!v || (sort == Sort::Boolean) != v->is_truth())
      throw ParseError("candidate '" + text + "' does not match the declared sort", join(start.span, t.span));
    return *v;
  }

  Rule rule(const Program& p) {
    auto start = peek().span;
    Rule r;
    if (is_ident("always") && is_symbol(":", 1)) {
      take();
      take();
      r.scope = RuleScope::Always;
    }
    auto head_start = peek().span;
    if (!starts_linear()) fail("expected a rule head", peek());
    RawLinear lhs = linear();
    if (is_symbol(":=")) {
      take();
      auto [scale, target] = assignment_target(lhs, head_start);
      RawLinear rhs = linear();
      auto span = join(head_start, prev_span());
      RawLinear left = {{scale, target, head_start}};
      auto [l, v] = clear_denominators(left, rhs, span);
      r.head = {target, l.summands()[0].coefficient, v};
      require_sort(p, target, Sort::Rational, head_start);
      for (const auto& s : v.summands())
        if (!s.term.is_one()) require_sort(p, s.term, Sort::Rational, span);
    } else {
      if (lhs.size() != 1 || lhs[0].coefficient != Rational(1) || lhs[0].term.is_one())
        throw ParseError("ill-formed rule head", join(head_start, prev_span()));
      r.head = {lhs[0].term, 1, std::nullopt};
      require_sort(p, lhs[0].term, Sort::Boolean, head_start);
    }
    if (is_symbol(":-")) {
      take();
      literal(p, r);
      while (is_symbol(",")) {
        take();
        literal(p, r);
      }
    }
    expect(".");
    r.span = join(start, prev_span());
    return r;
  }

  void literal(const Program& p, Rule& r) {
    bool negative = false;
    if (is_ident("not")) {
      take();
      negative = true;
    }
    std::size_t parens = 0;
    while (is_symbol("(")) {
      take();
      ++parens;
    }
    auto start = peek().span;
    Formula f = comparison(false);
    for (std::size_t k = 0; k < parens; ++k) expect(")");
    check_literal_sorts(p, f, start);
    (negative ? r.negative_body : r.positive_body).push_back(f);
  }

  void check_literal_sorts(const Program& p, const Formula& f, const SourceSpan& span) {
    auto linear_terms = [&](const LinearTerm& t) {
      for (const auto& s : t.summands())
        if (!s.term.is_one()) require_sort(p, s.term, Sort::Rational, span);
    };
    switch (f.op()) {
      case Op::Atom:
        if (f.atom().kind == ConstraintAtom::Kind::BoolIsTrue) {
          require_sort(p, f.atom().variable, Sort::Boolean, span);
        } else {
          linear_terms(f.atom().lhs);
          linear_terms(f.atom().rhs);
        }
        break;
      default:
        linear_terms(f.lhs_term());
        linear_terms(f.rhs_term());
    }
  }

  void require_sort(const Program& p, const TemporalTerm& t, Sort sort, const SourceSpan& span) {
    const auto* d = p.find(t.variable);
    if (!d) throw ParseError("undeclared variable '" + t.variable + "'", span);
    if (d->sort != sort)
      throw ParseError("variable '" + t.variable + "' is " + (d->sort == Sort::Boolean ? "boolean" : "rational") +
                           " but used as " + (sort == Sort::Boolean ? "boolean" : "rational"),
                       span);
  }

 private:
  std::string_view text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool in_program_ = false;
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(text);
  Formula f = p.formula();
  if (!p.at_end()) p.fail("unexpected trailing input", p.peek());
  return f;
}

Program parse_program(std::string_view text) {
  Parser p(text);
  return p.program();
}

}  // namespace thtc
