#pragma once

// Goal-directed preparation of the program for bottom-up evaluation:
//   1. magic transformation introducing call_p / ans_p predicates,
//   2. clause dependency graph and its strongly connected components,
//   3. normalization into flat variable/equation form,
//   4. abstract compilation of equations and builtins into Pos constraints.

#include <string>
#include <variant>
#include <vector>

#include "pground/builtins.hpp"
#include "pground/domain.hpp"
#include "pground/space.hpp"
#include "pground/term.hpp"

namespace pground::transform {

// --- magic transformation ---------------------------------------------------

// For p(t̄) :- q1(t̄1),...,qm(t̄m) emits, in this order, one call_qi clause per
// user body atom (guarded by call_p and the preceding body atoms) and then
// the ans_p clause guarded by call_p. Builtin atoms stay inline: they guard
// later call_ clauses but get no call_ clauses themselves. The goal seed
// clause is NOT added here (abstract_compile appends it).
ast::SourceProgram magic_transform(const ast::SourceProgram& p,
                                   const builtins::Table& table);

inline std::string call_pred_name(const std::string& p) { return "call_" + p; }
inline std::string ans_pred_name(const std::string& p) { return "ans_" + p; }

// --- clause dependency graph ------------------------------------------------

struct CallGraph {
  int n = 0;
  std::vector<std::vector<int>> succ; // i -> j: clause i uses a predicate clause j defines
};

struct SccOrder {
  struct Component {
    std::vector<int> clauses; // ascending
    bool cyclic = false;      // size > 1 or self-dependency
  };
  std::vector<Component> components; // topological: deps point to earlier entries
};

CallGraph build_call_graph(const ast::SourceProgram& magic,
                           const builtins::Table& table);
SccOrder scc_order(const CallGraph& g);

// --- normalization ----------------------------------------------------------

// Local variables are numbered 1..n_locals per clause, head args first.
struct NormEq {
  int lhs = 0;
  bool rhs_is_var = false;
  int rhs_var = 0;            // when rhs_is_var
  std::string functor;        // otherwise: lhs = functor(rhs_args)
  bool rhs_is_int = false;    // integer constants act as 0-ary constructors
  long long int_value = 0;
  std::vector<int> rhs_args;
};

struct NormCall {
  ast::Pred pred;
  std::vector<int> args;
};

using NormItem = std::variant<NormEq, NormCall>;

struct NormClause {
  ast::Pred head;
  std::vector<int> head_args; // distinct locals (not necessarily 1..n)
  std::vector<NormItem> body;
  int n_locals = 0;
};

std::vector<NormClause> normalize(const ast::SourceProgram& magic);

std::string to_string(const NormClause& c);

// --- abstract compilation ---------------------------------------------------

struct AbstractClause {
  ast::Pred head;
  std::vector<bdd::VarId> head_args;
  std::vector<std::pair<ast::Pred, std::vector<bdd::VarId>>> body_calls;
  bdd::NodeRef constraint = bdd::Manager::kTrue;
  std::vector<bdd::VarId> locals; // every local var of the clause
};

struct AbstractProgram {
  std::vector<AbstractClause> clauses; // magic clauses, then the goal seed
  int seed_index = -1;
  ast::Pred goal;
  bool parametric = false;
  domain::ParamSpace param_space;      // empty when non-parametric
  std::vector<ast::Pred> predicates;   // every call_/ans_ predicate, sorted
  std::vector<ast::Pred> source_preds; // user predicates these derive from
};

struct CompileOptions {
  bool parametric = false;
  std::string input_formula; // non-parametric seed; empty = 1
};

// `norm` must come from the magic-transformed program; the seed clause for
// call_goal is appended here (hence last in clause order).
AbstractProgram abstract_compile(const std::vector<NormClause>& norm,
                                 const builtins::Table& table,
                                 const ast::Pred& goal,
                                 const CompileOptions& opts,
                                 space::AnalysisSpace& sp);

// How many local variables an analysis space needs for this program.
int required_locals(const std::vector<NormClause>& norm, const ast::Pred& goal);

// Prefixes the seed's singleton component to the magic-clause order.
SccOrder with_seed(SccOrder order, int seed_index);

} // namespace pground::transform
