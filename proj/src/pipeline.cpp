#include "pground/pipeline.hpp"

#include <fstream>
#include <sstream>

#include "pground/errors.hpp"

namespace pground::pipeline {

Analysis analyze_text(std::string_view text, const Options& opts) {
  Analysis a;
  a.source = frontend::parse_program(text);
  a.diagnostics = frontend::validate(a.source, opts.table);
  frontend::check_validated(a.diagnostics);

  switch (opts.mode) {
    case Mode::Auto: a.parametric = a.source.config.parametric; break;
    case Mode::Parametric: a.parametric = true; break;
    case Mode::NonParametric: a.parametric = false; break;
  }
  if (a.parametric && !opts.input_formula.empty())
    throw UsageError("--input applies to non-parametric analysis only");

  const ast::Pred& goal = a.source.config.goal;
  a.magic = transform::magic_transform(a.source, opts.table);
  a.magic_order =
      transform::scc_order(transform::build_call_graph(a.magic, opts.table));
  a.norm = transform::normalize(a.magic);

  a.space = space::make_space(transform::required_locals(a.norm, goal),
                              a.parametric ? goal.arity : 0, opts.var_order);

  transform::CompileOptions copts;
  copts.parametric = a.parametric;
  copts.input_formula = opts.input_formula;
  a.program = transform::abstract_compile(a.norm, opts.table, goal, copts, *a.space);
  a.order = transform::with_seed(a.magic_order, a.program.seed_index);

  std::tie(a.result, a.stats) = solver::solve(a.program, a.order, *a.space, opts.max_iters);
  return a;
}

Analysis analyze_file(const std::string& path, const Options& opts) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return analyze_text(ss.str(), opts);
}

} // namespace pground::pipeline
