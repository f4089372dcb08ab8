#include "pground/solver.hpp"

#include <algorithm>
#include <chrono>

#include "pground/errors.hpp"

namespace pground::solver {

const domain::PosFormula& AnalysisResult::at(const ast::Pred& p) const {
  auto it = entries.find(p);
  if (it == entries.end())
    throw InternalError("no analysis entry for " + p.key() +
                        " (component order violated?)");
  return it->second;
}

namespace {

std::vector<bdd::VarId> entry_scope(int arity, const transform::AbstractProgram& p,
                                    space::AnalysisSpace& sp) {
  std::vector<bdd::VarId> scope = sp.x_prefix(arity);
  scope.insert(scope.end(), p.param_space.params.begin(), p.param_space.params.end());
  return scope;
}

} // namespace

domain::PosFormula clause_transfer(const transform::AbstractClause& c,
                                   const AnalysisResult& current,
                                   const transform::AbstractProgram& p,
                                   space::AnalysisSpace& sp) {
  bdd::Manager& m = sp.mgr;
  auto false_result = [&] {
    return domain::make_pos(m, bdd::Manager::kFalse,
                            entry_scope(c.head.arity, p, sp));
  };

  bdd::NodeRef acc = c.constraint;
  for (const auto& [pred, args] : c.body_calls) {
    const domain::PosFormula& cur = current.at(pred);
    if (cur.is_false()) return false_result();
    std::vector<bdd::VarId> canon = sp.x_prefix(pred.arity);
    acc = m.apply(bdd::Op::And, acc, m.rename(canon, args, cur.node));
    if (acc == bdd::Manager::kFalse) return false_result();
  }

  std::vector<bdd::VarId> away;
  for (bdd::VarId v : c.locals)
    if (std::find(c.head_args.begin(), c.head_args.end(), v) == c.head_args.end())
      away.push_back(v);
  acc = m.exists(away, acc);
  acc = m.rename(c.head_args, sp.x_prefix(c.head.arity), acc);
  return domain::make_pos(m, acc, entry_scope(c.head.arity, p, sp));
}

namespace {

// Returns true when the entry for this clause's head grew.
bool step_clause(const transform::AbstractClause& c, AnalysisResult& r,
                 const transform::AbstractProgram& p, space::AnalysisSpace& sp) {
  domain::PosFormula t = clause_transfer(c, r, p, sp);
  domain::PosFormula& cur = r.entries.at(c.head);
  domain::PosFormula joined = domain::pos_or(cur, t);
  if (joined.node == cur.node) return false;
  cur = std::move(joined);
  return true;
}

} // namespace

std::pair<AnalysisResult, IterationStats> solve(const transform::AbstractProgram& p,
                                                const transform::SccOrder& order,
                                                space::AnalysisSpace& sp,
                                                int max_iters) {
  auto t0 = std::chrono::steady_clock::now();
  AnalysisResult r;
  for (const auto& pred : p.predicates)
    r.entries.emplace(pred, domain::make_pos(sp.mgr, bdd::Manager::kFalse,
                                             entry_scope(pred.arity, p, sp)));

  IterationStats stats;
  std::size_t covered = 0;
  for (const auto& comp : order.components) {
    IterationStats::PerScc ss;
    ss.clauses = comp.clauses;
    covered += comp.clauses.size();
    if (!comp.cyclic) {
      for (int i : comp.clauses) step_clause(p.clauses.at(i), r, p, sp);
      ss.iterations = 1;
    } else {
      bool changed = true;
      while (changed) {
        changed = false;
        ++ss.iterations;
        if (ss.iterations > max_iters)
          throw InternalError("fixpoint iteration cap exceeded");
        for (int i : comp.clauses)
          changed |= step_clause(p.clauses.at(i), r, p, sp);
      }
    }
    stats.total_iterations += ss.iterations;
    stats.sccs.push_back(std::move(ss));
  }
  if (covered != p.clauses.size())
    throw InternalError("component order does not cover the program");

  stats.bdd_nodes = sp.mgr.node_count();
  stats.wall_us = std::chrono::duration_cast<std::chrono::microseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return {std::move(r), std::move(stats)};
}

bool one_sweep_grows(const transform::AbstractProgram& p, AnalysisResult& r,
                     space::AnalysisSpace& sp) {
  bool grew = false;
  for (const auto& c : p.clauses) grew |= step_clause(c, r, p, sp);
  return grew;
}

} // namespace pground::solver
