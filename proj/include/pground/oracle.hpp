#pragma once

// Ground-truth machinery for tests: idempotent substitutions with canonical
// representatives, unification with occurs check, a depth-bounded SLD
// interpreter that collects call/answer substitutions per predicate, the
// groundness abstraction of substitution sets, and brute-force enumerators
// of positive formulas and monotone maps.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pground/domain.hpp"
#include "pground/space.hpp"
#include "pground/term.hpp"

namespace pground::oracle {

// Canonical representative of an equivalence class modulo renaming of
// non-scope variables: every scope variable is bound (an unbound variable
// maps to a fresh one), no scope variable occurs in any range term, and
// range variables are named Z#1, Z#2... in first-occurrence order over the
// sorted scope. Structural equality then decides class equality.
struct Substitution {
  std::vector<std::string> scope;        // sorted
  std::map<std::string, ast::Term> bind; // total over scope

  auto operator<=>(const Substitution&) const = default;
};

std::string to_string(const Substitution& s);

// Canonicalizes raw bindings (chains allowed, unbound scope vars allowed).
Substitution canonicalize(std::vector<std::string> scope,
                          const std::map<std::string, ast::Term>& raw);

Substitution identity_sub(std::vector<std::string> scope);

// Most general unifier of the equations, canonical over vars(eqs);
// occurs check on. nullopt = not unifiable.
std::optional<Substitution>
mgu(const std::vector<std::pair<ast::Term, ast::Term>>& eqs);

// mgu of the two substitutions' equation sets (auxiliary variables kept
// apart), over the union of scopes. nullopt = incompatible bindings.
std::optional<Substitution> compose(const Substitution& a, const Substitution& b);

// Removes X from the scope (π_X drops exactly those variables).
Substitution project(const Substitution& s, const std::set<std::string>& away);

// Simultaneous scope renaming along distinct-to-distinct pairs.
Substitution rename_sub(const Substitution& s,
                        const std::vector<std::pair<std::string, std::string>>& mapping);

bool is_ground(const ast::Term& t);

// --- bounded concrete execution ---------------------------------------------

struct RunResult {
  std::map<ast::Pred, std::set<Substitution>> calls;   // over x1..xn
  std::map<ast::Pred, std::set<Substitution>> answers; // over x1..xn
  long long instantiation_errors = 0; // builtin hit insufficiently bound args
  bool depth_cutoff = false;          // some branch stopped at the bound
};

// Depth counts derivation-tree levels: each user-predicate expansion costs
// one. Comparison builtins (and is/2, ==/2) execute on integers only.
RunResult concrete_run(const ast::SourceProgram& p,
                       const std::vector<ast::Term>& initial_goals, int depth);

// --- abstraction and enumeration --------------------------------------------

// ⋁ over the substitutions of ∃(range vars). ⋀ (xi <-> conj of its range
// vars); scope x1..xn. Range variables borrow scratch slots.
domain::PosFormula alpha_pos(space::AnalysisSpace& sp,
                             const std::set<Substitution>& theta, int arity);

// All positive Boolean functions over the given variables (guard: ≤ 3 vars).
std::vector<bdd::NodeRef> enumerate_pos(bdd::Manager& m,
                                        const std::vector<bdd::VarId>& u);

// All monotone maps Con_B -> Pos_U (guards: |B| ≤ 3, |U| ≤ 2).
std::vector<domain::MonotoneMap>
enumerate_monotone(bdd::Manager& m, const domain::ParamSpace& ps,
                   const std::vector<bdd::VarId>& u);

} // namespace pground::oracle
