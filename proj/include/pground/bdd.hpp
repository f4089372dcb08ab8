#pragma once

// Reduced ordered binary decision diagrams over a fixed variable order.
// A Manager owns the node store; all formulas handled by one analysis run
// live in a single manager so that semantic equivalence is pointer equality.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pground::bdd {

using VarId = std::uint32_t;   // index into the manager's variable order
using NodeRef = std::uint32_t; // index into the node store; 0 = false, 1 = true

enum class Op : std::uint8_t { And, Or, Iff, Implies };

// Role tags let the analysis layer ask questions like "is this a parameter?"
// without keeping a side table, and let rename() find scratch variables.
enum class VarKind : std::uint8_t { Plain, Scratch, Param };

struct VarInfo {
  std::string name;
  VarKind kind = VarKind::Plain;
};

struct Literal {
  VarId var;
  bool negated;
  friend bool operator==(const Literal&, const Literal&) = default;
};
using Clause = std::vector<Literal>;

class Manager {
public:
  static constexpr NodeRef kFalse = 0;
  static constexpr NodeRef kTrue = 1;

  explicit Manager(std::vector<VarInfo> order);

  std::size_t var_count() const { return vars_.size(); }
  const VarInfo& var(VarId v) const { return vars_[v]; }
  std::optional<VarId> var_by_name(std::string_view name) const;

  NodeRef mk_var(VarId v);
  NodeRef apply(Op op, NodeRef a, NodeRef b);
  NodeRef negate(NodeRef a);

  // Existential quantification over a set of variables (duplicates allowed).
  NodeRef exists(std::span<const VarId> set, NodeRef a);

  // Cofactor under a partial truth assignment.
  NodeRef restrict(std::span<const std::pair<VarId, bool>> assignment, NodeRef a);

  // Simultaneous substitution of variables `to` for distinct variables `from`.
  // Targets may repeat or overlap the sources; overlapping renames route
  // through scratch variables, so the manager must have been built with at
  // least |from| scratch vars that occur in neither `a` nor `to`.
  NodeRef rename(std::span<const VarId> from, std::span<const VarId> to, NodeRef a);

  bool entails(NodeRef a, NodeRef b) { return apply(Op::Implies, a, b) == kTrue; }
  static bool equiv(NodeRef a, NodeRef b) { return a == b; }
  static bool is_const(NodeRef a) { return a <= kTrue; }

  // True iff the all-true assignment satisfies a (follows high edges).
  // Every non-false formula the analysis produces must stay in this class.
  bool is_positive(NodeRef a) const;

  bool eval(NodeRef a, const std::vector<bool>& assignment) const;

  std::vector<VarId> support(NodeRef a) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t count_nodes(NodeRef a) const; // reachable nodes incl. terminals

  VarId node_var(NodeRef n) const { return nodes_[n].var; }
  NodeRef node_low(NodeRef n) const { return nodes_[n].low; }
  NodeRef node_high(NodeRef n) const { return nodes_[n].high; }

private:
  struct Node {
    VarId var;
    NodeRef low, high;
  };

  NodeRef mk(VarId v, NodeRef lo, NodeRef hi);
  NodeRef apply_rec(Op op, NodeRef a, NodeRef b);
  NodeRef negate_rec(NodeRef a);
  NodeRef exists_rec(NodeRef a, std::uint32_t set_id);
  NodeRef restrict_rec(NodeRef a, std::uint32_t asg_id);

  std::uint32_t intern_set(std::vector<VarId> set);
  std::uint32_t intern_assignment(std::vector<std::pair<VarId, bool>> asg);

  std::vector<VarInfo> vars_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, NodeRef> unique_;

  // One cache for all memoized operations; the key packs an op tag with the
  // operands (second operand doubles as set/assignment id for unary ops).
  std::unordered_map<std::uint64_t, NodeRef> cache_;

  std::vector<std::vector<VarId>> sets_;
  std::unordered_map<std::string, std::uint32_t> set_index_;
  std::vector<std::vector<std::pair<VarId, bool>>> assignments_;
  std::unordered_map<std::string, std::uint32_t> assignment_index_;
};

// Conjunctive normal form made of prime implicates, deterministically ordered
// by clause size, then variable subset (lexicographic), then sign pattern
// (ascending, first variable's negation flag as lowest bit). TRUE gives {},
// FALSE gives {{}}.
std::vector<Clause> prime_implicate_cnf(Manager& m, NodeRef a);

// Rebuilds `a` inside `dst`, matching variables by name. Every support
// variable of `a` must exist in `dst` under the same name.
NodeRef copy_by_name(const Manager& src, NodeRef a, Manager& dst);

} // namespace pground::bdd
