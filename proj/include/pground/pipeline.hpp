#pragma once

// End-to-end driver: parse -> validate -> magic -> SCC -> normalize ->
// abstract-compile -> solve, keeping every intermediate stage for reports
// and tests.

#include <memory>
#include <string>
#include <string_view>

#include "pground/builtins.hpp"
#include "pground/parser.hpp"
#include "pground/solver.hpp"
#include "pground/transform.hpp"
#include "pground/validate.hpp"

namespace pground::pipeline {

enum class Mode { Auto, Parametric, NonParametric };

struct Options {
  Mode mode = Mode::Auto; // Auto obeys the file's parametric directive
  std::string input_formula;
  space::VarOrder var_order = space::VarOrder::ParamsLast;
  int max_iters = 10000;
  builtins::Table table = builtins::Table::defaults();
};

struct Analysis {
  ast::SourceProgram source;
  std::vector<frontend::Diagnostic> diagnostics;
  ast::SourceProgram magic;
  transform::SccOrder magic_order; // components of the magic clauses only
  std::vector<transform::NormClause> norm;
  std::unique_ptr<space::AnalysisSpace> space;
  transform::AbstractProgram program;
  transform::SccOrder order;       // seed component first, magic components after
  solver::AnalysisResult result;
  solver::IterationStats stats;
  bool parametric = false;
};

Analysis analyze_text(std::string_view text, const Options& opts = {});
Analysis analyze_file(const std::string& path, const Options& opts = {});

} // namespace pground::pipeline
