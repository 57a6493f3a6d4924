#include "thtc/syntax.hpp"

#include <sstream>

namespace thtc {

namespace {

enum Level : int { kIff = 0, kImplies = 1, kOr = 2, kAnd = 3, kTemporal = 4, kUnary = 5, kPrimary = 6 };

int level_of(Op op) {
  switch (op) {
    case Op::Iff: return kIff;
    case Op::Implies: return kImplies;
    case Op::Or: return kOr;
    case Op::And: return kAnd;
    case Op::Until: case Op::Release: case Op::Since: case Op::Trigger: return kTemporal;
    case Op::Not: case Op::Next: case Op::Previous: case Op::WeakNext: case Op::WeakPrev:
    case Op::Always: case Op::Eventually: case Op::AlwaysPast: case Op::EventuallyPast:
      return kUnary;
    default: return kPrimary;
  }
}

const char* symbol_of(Op op) {
  switch (op) {
    case Op::Iff: return "<->";
    case Op::Implies: return "->";
    case Op::Or: return "|";
    case Op::And: return "&";
    case Op::Until: return "U";
    case Op::Release: return "R";
    case Op::Since: return "S";
    case Op::Trigger: return "T";
    case Op::Not: return "not";
    case Op::Next: return "X";
    case Op::Previous: return "Y";
    case Op::WeakNext: return "wX";
    case Op::WeakPrev: return "wY";
    case Op::Always: return "G";
    case Op::Eventually: return "F";
    case Op::AlwaysPast: return "H";
    case Op::EventuallyPast: return "P";
    default: return "?";
  }
}

void print(std::ostream& os, const Formula& f, int min_level);

void print_child(std::ostream& os, const Formula& f, int min_level) {
  if (level_of(f.op()) < min_level) {
    os << '(';
    print(os, f, kIff);
    os << ')';
  } else {
    print(os, f, min_level);
  }
}

void print(std::ostream& os, const Formula& f, int /*min_level*/) {
  switch (f.op()) {
    case Op::Atom: os << to_string(f.atom()); return;
    case Op::Bottom: os << "false"; return;
    case Op::Top: os << "true"; return;
    case Op::Initial: os << "I"; return;
    case Op::Final: os << "Fin"; return;
    case Op::Eq: os << to_string(f.lhs_term()) << " = " << to_string(f.rhs_term()); return;
    case Op::Lt: os << to_string(f.lhs_term()) << " < " << to_string(f.rhs_term()); return;
    case Op::Neq: os << to_string(f.lhs_term()) << " != " << to_string(f.rhs_term()); return;
    case Op::Df: os << "df(" << to_string(f.lhs_term()) << ")"; return;
    case Op::Assign:
      if (f.scale() != 1) os << f.scale() << '*';
      os << to_string(f.target()) << " := " << to_string(f.rhs_term());
      return;
    default: break;
  }
  int lv = level_of(f.op());
  if (lv == kUnary) {
    os << symbol_of(f.op()) << ' ';
    print_child(os, f.child(0), kUnary);
    return;
  }
  int left = lv;
  int right = lv;
  switch (f.op()) {
    case Op::Iff: left = kIff; right = kImplies; break;
    case Op::Implies: left = kOr; right = kImplies; break;
    case Op::Or: left = kOr; right = kAnd; break;
    case Op::And: left = kAnd; right = kTemporal; break;
    default: left = kUnary; right = kTemporal; break;
  }
  print_child(os, f.child(0), left);
  os << ' ' << symbol_of(f.op()) << ' ';
  print_child(os, f.child(1), right);
}

std::string print_literal(const Formula& f) {
  auto s = to_string(f);
  if (f.op() == Op::Atom && f.atom().kind == ConstraintAtom::Kind::BoolIsTrue) return s;
  return "(" + s + ")";
}

}  // namespace

std::string to_string(const TemporalTerm& term) {
  if (term.is_one()) return "1";
  if (term.offset == 0) return term.variable;
  return term.variable + "@" + std::to_string(term.offset);
}

std::string to_string(const LinearTerm& term) {
  std::ostringstream os;
  bool first = true;
  for (const auto& s : term.summands()) {
    std::int64_t c = s.coefficient;
    if (first) {
      if (s.term.is_one()) {
        os << c;
      } else if (c == 1) {
        os << to_string(s.term);
      } else if (c == -1) {
        os << '-' << to_string(s.term);
      } else {
        os << c << '*' << to_string(s.term);
      }
      first = false;
      continue;
    }
    os << (c < 0 ? " - " : " + ");
    std::int64_t a = c < 0 ? -c : c;
    if (s.term.is_one()) {
      os << a;
    } else if (a == 1) {
      os << to_string(s.term);
    } else {
      os << a << '*' << to_string(s.term);
    }
  }
  return os.str();
}

std::string to_string(const ConstraintAtom& atom) {
  switch (atom.kind) {
    case ConstraintAtom::Kind::LinearLeq: return to_string(atom.lhs) + " <= " + to_string(atom.rhs);
    case ConstraintAtom::Kind::BoolIsTrue: return to_string(atom.variable);
    case ConstraintAtom::Kind::Custom: {
      std::string s = atom.name + "(";
      for (std::size_t i = 0; i < atom.args.size(); ++i) {
        if (i) s += ", ";
        s += to_string(atom.args[i]);
      }
      return s + ")";
    }
    case ConstraintAtom::Kind::Complement: return "compl(" + to_string(*atom.inner) + ")";
  }
  return "?";
}

std::string to_string(const Formula& formula) {
  std::ostringstream os;
  print(os, formula, kIff);
  return os.str();
}

std::string to_string(const Rule& rule) {
  std::string s = rule.scope == RuleScope::Always ? "always: " : "";
  s += to_string(rule.head_formula());
  if (!rule.positive_body.empty() || !rule.negative_body.empty()) {
    s += " :- ";
    bool first = true;
    for (const auto& l : rule.positive_body) {
      if (!first) s += ", ";
      s += to_string(l);
      first = false;
    }
    for (const auto& l : rule.negative_body) {
      if (!first) s += ", ";
      s += "not " + print_literal(l);
      first = false;
    }
  }
  return s + ".";
}

std::string to_string(const Program& program) {
  std::string s;
  for (const auto& v : program.variables) {
    s += "var " + v.name + " : " + (v.sort == Sort::Boolean ? "boolean" : "rational");
    if (v.candidates) {
      s += " in {";
      for (std::size_t i = 0; i < v.candidates->size(); ++i) {
        if (i) s += ", ";
        s += (*v.candidates)[i].to_string();
      }
      s += "}";
    }
    s += ".\n";
  }
  for (const auto& r : program.rules) s += to_string(r) + "\n";
  return s;
}

}  // namespace thtc
