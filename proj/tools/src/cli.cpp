#include "thtc/cli.hpp"

#include "thtc/demo_programs.hpp"
#include "thtc/equilibrium.hpp"
#include "thtc/kamp.hpp"
#include "thtc/parser.hpp"
#include "thtc/semantics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

namespace thtc::cli {

namespace {

struct InputFailure : Error {
  using Error::Error;
};

struct Settings {
  std::string formula_file;
  std::string trace_file;
  std::size_t at = 0;
  bool all_times = false;

  std::string program_file;
  std::size_t horizon = 1;
  std::string engine = "stratified";
  bool no_frame_guard = false;
  std::string domains_file;
  unsigned threads = 1;

  std::string free_var = "t";
  bool signature = false;

  std::string demo;
};

struct Command {
  CLI::App* check;
  CLI::App* solve;
  CLI::App* translate;
  CLI::App* demo;
  CLI::App* manual;
};

std::unique_ptr<CLI::App> build_app(Settings& s, Command& c) {
  auto app = std::make_unique<CLI::App>("Formulas, traces and programs of temporal here-and-there logic with constraints.", "thtc");
  app->require_subcommand(1);
  app->footer(
      "Exit status: 0 success, 1 negative answer (unsatisfied or no model), 2 input error, "
      "3 resource limit exceeded.");

  c.check = app->add_subcommand("check", "Evaluate a formula on an HTc trace.");
  c.check->add_option("formula", s.formula_file, "File holding one formula")->required();
  c.check->add_option("trace", s.trace_file, "Trace document (JSON)")->required();
  c.check->add_option("--at", s.at, "Time point to evaluate at")->capture_default_str();
  c.check->add_flag("--all-times", s.all_times, "Report the result at every time point");

  c.solve = app->add_subcommand("solve", "Compute the stable traces of a temporal program.");
  c.solve->add_option("program", s.program_file, "Program file (.tlp)")->required();
  c.solve->add_option("--horizon", s.horizon, "Trace length")->check(CLI::PositiveNumber)->capture_default_str();
  c.solve->add_option("--engine", s.engine, "stratified or enumerate")
      ->check(CLI::IsMember({"stratified", "enumerate"}))
      ->capture_default_str();
  c.solve->add_flag("--no-frame-guard", s.no_frame_guard, "Keep rule instances whose head lies past the horizon");
  c.solve->add_option("--domains", s.domains_file, "Candidate values per variable (JSON)");
  c.solve->add_option("--threads", s.threads, "Worker threads for enumeration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  c.translate = app->add_subcommand("translate", "Print the first-order translation of a formula.");
  c.translate->add_option("formula", s.formula_file, "File holding one formula")->required();
  c.translate->add_option("--free-var", s.free_var, "Name of the free time variable")->capture_default_str();
  c.translate->add_flag("--signature", s.signature, "Precede the formula with the predicate symbol table");

  c.demo = app->add_subcommand("demo", "Run an embedded example program at horizon 9.");
  c.demo->add_option("name", s.demo, "radar or radar-default-acc")
      ->required()
      ->check(CLI::IsMember({"radar", "radar-default-acc"}));

  c.manual = app->add_subcommand("manual", "Print this manual page in troff format.");
  return app;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFailure("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void report(std::ostream& err, const std::string& file, std::string_view text, const ParseError& e) {
  const auto& sp = e.span();
  err << file << ":" << sp.line << ":" << sp.column << ": error: " << e.what() << "\n";
  std::size_t b = std::min(sp.begin, text.size());
  std::size_t ls = text.rfind('\n', b == 0 ? 0 : b - 1);
  ls = (ls == std::string_view::npos || b == 0) ? 0 : ls + 1;
  if (b > 0 && text[b - 1] == '\n') ls = b;
  std::size_t le = text.find('\n', ls);
  if (le == std::string_view::npos) le = text.size();
  if (ls >= le) return;
  err << "  " << text.substr(ls, le - ls) << "\n  " << std::string(b - ls, ' ')
      << std::string(std::max<std::size_t>(1, std::min(sp.end, le) > b ? std::min(sp.end, le) - b : 1), '^') << "\n";
}

template <typename F>
auto parse_input(const std::string& file, const std::string& text, F&& parse) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    std::ostringstream os;
    report(os, file, text, e);
    throw InputFailure(os.str());
  }
}

int cmd_check(const Settings& s, std::ostream& out) {
  std::string ftext = read_file(s.formula_file);
  std::string ttext = read_file(s.trace_file);
  Formula f = parse_input(s.formula_file, ftext, [](const std::string& t) { return parse_formula(t); });
  HTcTrace m = parse_input(s.trace_file, ttext, [](const std::string& t) { return parse_trace(t); });
  nlohmann::json doc;
  bool ok;
  if (s.all_times) {
    std::vector<bool> r = satisfies_all(m, f);
    ok = std::all_of(r.begin(), r.end(), [](bool b) { return b; });
    doc["satisfied"] = r;
  } else {
    ok = satisfies(m, s.at, f);
    doc["at"] = s.at;
    doc["satisfied"] = ok;
  }
  out << doc.dump() << "\n";
  return ok ? kOk : kNegative;
}

SolveResult run_solver(const Program& program, SolveOptions options, std::ostream& err) {
  try {
    return solve(program, options);
  } catch (const StratificationError& e) {
    if (options.engine != Engine::Stratified) throw;
    options.engine = Engine::Enumerate;
    try {
      SolveResult r = solve(program, options);
      err << "note: " << e.what() << "; solved by enumeration\n";
      return r;
    } catch (const EvalError&) {
      throw EvalError(std::string(e.what()) + "; enumeration needs candidate values for every variable (--domains)");
    }
  }
}

int cmd_solve(const Settings& s, std::ostream& out, std::ostream& err) {
  std::string ptext = read_file(s.program_file);
  Program program = parse_input(s.program_file, ptext, [](const std::string& t) { return parse_program(t); });
  SolveOptions options;
  options.horizon = s.horizon;
  options.frame_guard = !s.no_frame_guard;
  options.engine = s.engine == "enumerate" ? Engine::Enumerate : Engine::Stratified;
  options.threads = s.threads;
  if (!s.domains_file.empty()) {
    std::string dtext = read_file(s.domains_file);
    options.domains = parse_input(s.domains_file, dtext, [](const std::string& t) { return parse_domains(t); });
  }
  SolveResult r = run_solver(program, options, err);
  out << write_solve_result(r);
  return r.models.empty() ? kNegative : kOk;
}

bool valid_time_variable(const std::string& v) {
  if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_')) return false;
  return std::all_of(v.begin(), v.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

int cmd_translate(const Settings& s, std::ostream& out) {
  if (!valid_time_variable(s.free_var)) throw InputFailure("invalid time variable name '" + s.free_var + "'");
  std::string ftext = read_file(s.formula_file);
  Formula f = parse_input(s.formula_file, ftext, [](const std::string& t) { return parse_formula(t); });
  Translation tr = st_translate(f, s.free_var);
  if (s.signature) out << describe_signature(tr.signature);
  out << export_fo(tr.formula) << "\n";
  return kOk;
}

std::string cell(const Value& v) { return v.defined() ? v.to_string() : "u"; }

// Variables that are undefined somewhere or change value over time; the
// rest are constant and left out of the table.
std::vector<std::string> varying(const Program& program, const Trace& trace) {
  std::vector<std::string> out;
  for (const auto& d : program.variables) {
    Value first = trace.at(0).get(d.name);
    bool keep = !first.defined();
    for (std::size_t i = 1; i < trace.length() && !keep; ++i) keep = trace.at(i).get(d.name) != first;
    if (keep) out.push_back(d.name);
  }
  return out;
}

void write_table(std::ostream& out, const Program& program, const Trace& trace) {
  std::vector<std::string> cols = varying(program, trace);
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"time"});
  rows[0].insert(rows[0].end(), cols.begin(), cols.end());
  for (std::size_t i = 0; i < trace.length(); ++i) {
    std::vector<std::string> r{std::to_string(i)};
    for (const auto& c : cols) r.push_back(cell(trace.at(i).get(c)));
    rows.push_back(std::move(r));
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& r : rows)
    for (std::size_t k = 0; k < r.size(); ++k) width[k] = std::max(width[k], r[k].size());
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k) line += "  ";
      line += std::string(width[k] - r[k].size(), ' ') + r[k];
    }
    out << line << "\n";
  }
}

int cmd_demo(const Settings& s, std::ostream& out) {
  Program program = parse_program(s.demo == "radar" ? demo::kRadar : demo::kRadarDefaultAcc);
  SolveOptions options;
  options.horizon = 9;
  SolveResult r = solve(program, options);
  if (r.models.empty()) {
    out << write_solve_result(r);
    return kNegative;
  }
  write_table(out, program, r.models.front());
  out << "\n" << write_solve_result(r);
  return kOk;
}

std::string roff_escape(std::string s) {
  std::string out;
  for (char c : s) {
    if (c == '\\') out += "\\e";
    else if (c == '-') out += "\\-";
    else out += c;
  }
  if (!out.empty() && (out[0] == '.' || out[0] == '\'')) out = "\\&" + out;
  return out;
}

}  // namespace

std::string manual_page() {
  Settings s;
  Command c{};
  auto app = build_app(s, c);
  std::ostringstream os;
  os << ".TH THTC 1 \"\" \"thtc\" \"User Commands\"\n";
  os << ".SH NAME\nthtc \\- " << roff_escape(app->get_description()) << "\n";
  os << ".SH SYNOPSIS\n";
  for (const CLI::App* sub : app->get_subcommands([](const CLI::App*) { return true; })) {
    os << ".B thtc " << sub->get_name() << "\n";
    for (const CLI::Option* o : sub->get_options()) {
      if (o->get_name() == "--help") continue;
      if (o->get_positional()) os << ".I " << o->get_name() << "\n";
      else os << "[" << roff_escape(o->get_name()) << (!o->get_type_name().empty() ? " " + o->get_type_name() : "") << "]\n";
    }
    os << ".br\n";
  }
  os << ".SH COMMANDS\n";
  for (const CLI::App* sub : app->get_subcommands([](const CLI::App*) { return true; })) {
    os << ".SS " << sub->get_name() << "\n" << roff_escape(sub->get_description()) << "\n";
    for (const CLI::Option* o : sub->get_options()) {
      if (o->get_name() == "--help") continue;
      os << ".TP\n.B " << roff_escape(o->get_name()) << "\n" << roff_escape(o->get_description());
      if (!o->get_default_str().empty()) os << " (default: " << roff_escape(o->get_default_str()) << ")";
      os << "\n";
    }
  }
  os << ".SH EXIT STATUS\n" << roff_escape(app->get_footer()) << "\n";
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  Command c{};
  auto app = build_app(s, c);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app->parse(reversed);
  } catch (const CLI::Success& e) {
    return app->exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  try {
    if (c.check->parsed()) return cmd_check(s, out);
    if (c.solve->parsed()) return cmd_solve(s, out, err);
    if (c.translate->parsed()) return cmd_translate(s, out);
    if (c.demo->parsed()) return cmd_demo(s, out);
    out << manual_page();
    return kOk;
  } catch (const InputFailure& e) {
    std::string msg = e.what();
    err << (msg.find(": error: ") != std::string::npos ? msg : "error: " + msg + "\n");
    return kInputError;
  } catch (const ResourceLimit& e) {
    err << "error: resource limit: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace thtc::cli
