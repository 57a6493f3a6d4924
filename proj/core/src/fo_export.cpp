#include "thtc/kamp.hpp"

namespace thtc {

namespace {

using K = FOFormula::Kind;

std::string time_text(const FOTime& t) {
  std::string base = t.variable ? *t.variable : std::to_string(t.constant);
  if (t.offset == 0) return base;
  return "plus(" + base + ", " + std::to_string(t.offset) + ")";
}

std::string term_text(const FOTerm& t) {
  if (!t.function) return time_text(t.time);
  return "app(f_" + *t.function + ", " + time_text(t.time) + ")";
}

void emit(const FOFormula& f, std::string& out) {
  switch (f.kind) {
    case K::Bottom: out += "$false"; return;
    case K::Top: out += "$true"; return;
    case K::Pred:
      out += f.name;
      if (!f.terms.empty()) {
        out += "(";
        for (std::size_t k = 0; k < f.terms.size(); ++k) out += (k ? ", " : "") + term_text(f.terms[k]);
        out += ")";
      }
      return;
    case K::Eq: out += "(" + term_text(f.terms[0]) + " = " + term_text(f.terms[1]) + ")"; return;
    case K::Lt: out += "$less(" + term_text(f.terms[0]) + ", " + term_text(f.terms[1]) + ")"; return;
    case K::Leq: out += "$lesseq(" + term_text(f.terms[0]) + ", " + term_text(f.terms[1]) + ")"; return;
    case K::Implies:
      if (f.children[1].kind == K::Bottom) {
        out += "~ ";
        emit(f.children[0], out);
        return;
      }
      [[fallthrough]];
    case K::And: case K::Or: {
      const char* sym = f.kind == K::And ? " & " : f.kind == K::Or ? " | " : " => ";
      out += "(";
      emit(f.children[0], out);
      out += sym;
      emit(f.children[1], out);
      out += ")";
      return;
    }
    case K::Exists: case K::Forall:
      out += (f.kind == K::Exists ? "?[" : "![") + f.name + " : time] : ";
      emit(f.children[0], out);
      return;
  }
}

}  // namespace

std::string export_fo(const FOFormula& formula) {
  std::string out;
  emit(formula, out);
  return out;
}

}  // namespace thtc
