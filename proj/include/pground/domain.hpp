#pragma once

// The Pos abstract domain (positive formulas over a declared scope, plus a
// FALSE bottom for "no answer derived yet"), the Con domain of parameter
// conjunctions, and the encoding that folds a monotone map Con -> Pos into
// one positive formula over parameters-plus-program-variables. Analysis
// results live as encodings; explicit maps exist for tests only.

#include <cstdint>
#include <span>
#include <vector>

#include "pground/bdd.hpp"

namespace pground::domain {

struct PosFormula {
  bdd::Manager* mgr = nullptr;
  bdd::NodeRef node = bdd::Manager::kFalse;
  std::vector<bdd::VarId> scope; // sorted, duplicate-free

  bool is_false() const { return node == bdd::Manager::kFalse; }
};

// Checks the invariant: node is FALSE or positive, support within scope.
PosFormula make_pos(bdd::Manager& m, bdd::NodeRef node, std::vector<bdd::VarId> scope);

PosFormula pos_and(const PosFormula& a, const PosFormula& b);
PosFormula pos_or(const PosFormula& a, const PosFormula& b);

// Existentially quantifies `away` out of a; parameters may never be
// projected away mid-analysis (usage error).
PosFormula pos_project(const PosFormula& a, std::span<const bdd::VarId> away);

PosFormula pos_rename(const PosFormula& a, std::span<const bdd::VarId> from,
                      std::span<const bdd::VarId> to);

// A parameter subset X standing for the conjunction of the chosen b's
// (empty set = the formula 1). Bit i corresponds to params[i].
struct ConElement {
  std::uint32_t bits = 0;
  bool has(int i) const { return bits >> i & 1; }
  friend bool operator==(const ConElement&, const ConElement&) = default;
};

ConElement con_meet(ConElement a, ConElement b); // conjunction: union
ConElement con_join(ConElement a, ConElement b); // least common weakening: intersection

struct ParamSpace {
  std::vector<bdd::VarId> params;    // b1..bn
  std::vector<bdd::VarId> goal_args; // x1..xn, positionally matching
};

// Least model of the conjunction: chosen parameters true, the rest false.
std::vector<std::pair<bdd::VarId, bool>> mm(const ParamSpace& ps, ConElement g);

// The (non-positive) formula whose unique minimal model is the assignment.
bdd::NodeRef bf(bdd::Manager& m, std::span<const std::pair<bdd::VarId, bool>> assignment);

// bf of the least model of g; these are pairwise disjoint across Con.
bdd::NodeRef bm(bdd::Manager& m, const ParamSpace& ps, ConElement g);

// Explicit monotone map Con_B -> Pos_U, indexed by parameter-subset bits.
// Values must be positive (FALSE is not a Pos element) and must not mention
// parameters.
struct MonotoneMap {
  std::vector<bdd::NodeRef> values; // size 2^|B|
};

bool is_monotone(bdd::Manager& m, const ParamSpace& ps, const MonotoneMap& phi);

// Encoding: disjunction over g of bm(g) ∧ phi(g). Rejects non-monotone input.
bdd::NodeRef nabla(bdd::Manager& m, const ParamSpace& ps, const MonotoneMap& phi);

// Inverse: g ↦ cofactor at mm(g). Rejects formulas outside the encoding's
// image (detected by decode-and-re-encode).
MonotoneMap nabla_inv(bdd::Manager& m, const ParamSpace& ps, bdd::NodeRef h);

// The parametric input formula ⋀ (bi -> xi); scope = params ∪ goal args.
PosFormula encode_input(bdd::Manager& m, const ParamSpace& ps);

// Cofactor of a parametric result at mm(g); scope drops the parameters but
// keeps all program variables.
PosFormula instantiate(const PosFormula& h, const ParamSpace& ps, ConElement g);

} // namespace pground::domain
