#pragma once

// Bottom-up fixpoint over the abstract program: predicates start at FALSE,
// components are solved in dependency order, and only cyclic components
// iterate. Every update is an upward join, so termination follows from the
// finiteness of the formula lattice.

#include <cstdint>
#include <map>
#include <vector>

#include "pground/domain.hpp"
#include "pground/transform.hpp"

namespace pground::solver {

struct AnalysisResult {
  std::map<ast::Pred, domain::PosFormula> entries;

  const domain::PosFormula& at(const ast::Pred& p) const;
  bool reachable(const ast::Pred& p) const { return !at(p).is_false(); }
};

struct IterationStats {
  struct PerScc {
    std::vector<int> clauses;
    int iterations = 0; // sweeps over the component, including the stable one
  };
  std::vector<PerScc> sccs;
  int total_iterations = 0;
  std::int64_t wall_us = 0;
  std::size_t bdd_nodes = 0; // manager node-store size after solving
};

// One clause evaluated against the current approximation: constraint ∧
// renamed body entries, projected onto head variables (and parameters),
// then renamed to the canonical x1..xn of the head predicate.
domain::PosFormula clause_transfer(const transform::AbstractClause& c,
                                   const AnalysisResult& current,
                                   const transform::AbstractProgram& p,
                                   space::AnalysisSpace& sp);

std::pair<AnalysisResult, IterationStats> solve(const transform::AbstractProgram& p,
                                                const transform::SccOrder& order,
                                                space::AnalysisSpace& sp,
                                                int max_iters = 10000);

// One full sweep over every clause; reports whether anything grew. Used by
// tests checking that an instantiated parametric fixpoint is already stable.
bool one_sweep_grows(const transform::AbstractProgram& p, AnalysisResult& r,
                     space::AnalysisSpace& sp);

} // namespace pground::solver
