#pragma once

// Variable layout for one analysis run: canonical/local variables x1..xK,
// scratch variables for overlapping renames, and parameters b1..bn. The
// order is fixed per run; parameters go last by default so implications
// bi -> xi stay small, and can be put first instead via the CLI flag.

#include <memory>
#include <vector>

#include "pground/bdd.hpp"

namespace pground::space {

enum class VarOrder { ParamsLast, ParamsFirst };

struct AnalysisSpace {
  bdd::Manager mgr;
  std::vector<bdd::VarId> xs;      // x1..xK
  std::vector<bdd::VarId> scratch; // one per x, for rename routing
  std::vector<bdd::VarId> params;  // b1..bn

  explicit AnalysisSpace(bdd::Manager m) : mgr(std::move(m)) {}

  bdd::VarId x(int i_one_based) const { return xs[i_one_based - 1]; }
  std::vector<bdd::VarId> x_prefix(int n) const {
    return {xs.begin(), xs.begin() + n};
  }
};

std::unique_ptr<AnalysisSpace> make_space(int n_locals, int n_params,
                                          VarOrder order = VarOrder::ParamsLast);

} // namespace pground::space
