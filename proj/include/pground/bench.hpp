#pragma once

// Parametric vs non-parametric overhead measurement over a directory of
// programs. Times cover the fixpoint solve only (median of the requested
// repetitions); failures are carried per row so one bad file doesn't stop
// the run.

#include <string>
#include <vector>

#include "pground/pipeline.hpp"

namespace pground::bench {

struct BenchRow {
  std::string program; // file name
  std::string goal;
  int atoms = 0;
  double t_parametric_ms = 0;
  double t_nonparametric_ms = 0;
  double ratio = 0; // parametric / non-parametric
  bool ok = false;
  std::string error;
};

std::vector<BenchRow> run_bench(const std::string& dir, int reps,
                                const pipeline::Options& base);

// Columns: program,goal,atoms,t_parametric_ms,t_nonparametric_ms,ratio with
// a trailing TOTAL row; failed rows are omitted here.
std::string to_csv(const std::vector<BenchRow>& rows);

} // namespace pground::bench
