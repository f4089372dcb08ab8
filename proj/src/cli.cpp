#include "pground/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pground/bench.hpp"
#include "pground/errors.hpp"
#include "pground/report.hpp"

namespace pground::cli {

namespace {

domain::ConElement parse_instantiate(const std::string& text,
                                     const std::vector<std::string>& param_names) {
  domain::ConElement g;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto strip = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    item = strip(item);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw UsageError("--instantiate expects b<i>=0|1 pairs, got '" + item + "'");
    std::string name = strip(item.substr(0, eq));
    std::string value = strip(item.substr(eq + 1));
    auto it = std::find(param_names.begin(), param_names.end(), name);
    if (it == param_names.end())
      throw UsageError("--instantiate: unknown parameter '" + name + "'");
    if (value != "0" && value != "1")
      throw UsageError("--instantiate: value for " + name + " must be 0 or 1");
    if (value == "1")
      g.bits |= 1u << (it - param_names.begin());
  }
  return g;
}

int run_checked(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"goal-dependent groundness analyzer"};
  std::string file, parametric = "auto", instantiate_text, input_formula,
              var_order = "params-last", bench_dir, builtins_file;
  bool json = false, dump = false;
  int reps = 3, max_iters = 10000;

  app.add_option("file", file, "program to analyze (.pl)");
  app.add_option("--parametric", parametric,
                 "auto|yes|no: override the file's parametric directive")
      ->check(CLI::IsMember({"auto", "yes", "no"}));
  app.add_option("--instantiate", instantiate_text,
                 "evaluate the parametric result at \"b1=0|1,...\"");
  app.add_option("--input", input_formula,
                 "non-parametric seed formula over x1..xn (default 1)");
  app.add_flag("--json", json, "structured report on stdout");
  app.add_flag("--dump-abstract", dump, "print the compiled abstract program");
  app.add_option("--var-order", var_order, "params-last|params-first")
      ->check(CLI::IsMember({"params-last", "params-first"}));
  app.add_option("--bench", bench_dir, "benchmark every .pl file in a directory");
  app.add_option("--reps", reps, "benchmark repetitions (median taken)");
  app.add_option("--max-iters", max_iters, "fixpoint iteration cap per component");
  app.add_option("--builtins", builtins_file,
                 "extra builtin success patterns (name/arity: formula)");

  std::vector<const char*> argv{"analyze"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  pipeline::Options opts;
  if (parametric == "yes") opts.mode = pipeline::Mode::Parametric;
  else if (parametric == "no") opts.mode = pipeline::Mode::NonParametric;
  opts.input_formula = input_formula;
  opts.var_order = var_order == "params-first" ? space::VarOrder::ParamsFirst
                                               : space::VarOrder::ParamsLast;
  opts.max_iters = max_iters;
  if (!builtins_file.empty()) {
    std::ifstream in(builtins_file);
    if (!in) throw UsageError("cannot open builtin table " + builtins_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    opts.table = builtins::load_table(ss.str());
  }

  if (!bench_dir.empty()) {
    if (!file.empty())
      throw UsageError("--bench takes a directory; no program file expected");
    auto rows = bench::run_bench(bench_dir, reps, opts);
    for (const auto& r : rows)
      if (!r.ok) err << "bench: " << r.program << ": " << r.error << "\n";
    out << bench::to_csv(rows);
    return 0;
  }
  if (file.empty()) throw UsageError("no program file given (see --help)");

  pipeline::Analysis a = pipeline::analyze_file(file, opts);
  for (const auto& d : a.diagnostics)
    if (d.severity == frontend::Diagnostic::Severity::Warning)
      err << "warning: " << d.message << "\n";

  std::optional<domain::ConElement> at;
  std::optional<std::string> at_text;
  if (!instantiate_text.empty()) {
    if (!a.parametric)
      throw UsageError("--instantiate applies to parametric analysis only");
    std::vector<std::string> names;
    for (bdd::VarId v : a.program.param_space.params)
      names.push_back(a.space->mgr.var(v).name);
    at = parse_instantiate(instantiate_text, names);
    at_text = instantiate_text;
  }

  if (dump) out << report::dump_abstract(a);
  report::RunReport rep = report::build_report(a, file, at, at_text);
  if (json) out << report::to_json(rep).dump(2) << "\n";
  else out << report::to_text(rep);
  return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return run_checked(args, out, err);
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidateError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

} // namespace pground::cli
