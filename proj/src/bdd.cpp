#include "pground/bdd.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <limits>
#include <unordered_set>

#include "pground/errors.hpp"

namespace pground::bdd {

namespace {

// Node indices are kept below 2^24 so (var, low, high) packs injectively
// into 64 bits for the unique table, and below 2^28 for cache keys.
constexpr NodeRef kMaxNodes = 1u << 24;

enum CacheTag : std::uint64_t {
  TagAnd = 0,
  TagOr,
  TagIff,
  TagImplies,
  TagNot,
  TagExists,
  TagRestrict,
};

std::uint64_t node_key(VarId v, NodeRef lo, NodeRef hi) {
  return (std::uint64_t(v) << 48) | (std::uint64_t(lo) << 24) | hi;
}

std::uint64_t cache_key(std::uint64_t tag, NodeRef a, std::uint32_t b) {
  return (tag << 56) | (std::uint64_t(a) << 28) | b;
}

std::uint64_t op_tag(Op op) {
  switch (op) {
    case Op::And: return TagAnd;
    case Op::Or: return TagOr;
    case Op::Iff: return TagIff;
    case Op::Implies: return TagImplies;
  }
  return TagAnd;
}

bool commutative(Op op) { return op != Op::Implies; }

std::string bytes_of(const void* p, std::size_t n) {
  return std::string(static_cast<const char*>(p), n);
}

} // namespace

Manager::Manager(std::vector<VarInfo> order) : vars_(std::move(order)) {
  if (vars_.size() >= (1u << 16))
    throw InternalError("bdd: too many variables");
  // Slots 0 and 1 are the terminals; their fields are never inspected.
  nodes_.push_back({std::numeric_limits<VarId>::max(), 0, 0});
  nodes_.push_back({std::numeric_limits<VarId>::max(), 1, 1});
}

std::optional<VarId> Manager::var_by_name(std::string_view name) const {
  for (VarId v = 0; v < vars_.size(); ++v)
    if (vars_[v].name == name) return v;
  return std::nullopt;
}

NodeRef Manager::mk(VarId v, NodeRef lo, NodeRef hi) {
  if (lo == hi) return lo;
  auto key = node_key(v, lo, hi);
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  if (nodes_.size() >= kMaxNodes)
    throw InternalError("bdd: node capacity exceeded");
  NodeRef r = static_cast<NodeRef>(nodes_.size());
  nodes_.push_back({v, lo, hi});
  unique_.emplace(key, r);
  return r;
}

NodeRef Manager::mk_var(VarId v) {
  assert(v < vars_.size());
  return mk(v, kFalse, kTrue);
}

NodeRef Manager::apply(Op op, NodeRef a, NodeRef b) { return apply_rec(op, a, b); }

NodeRef Manager::apply_rec(Op op, NodeRef a, NodeRef b) {
  switch (op) {
    case Op::And:
      if (a == kFalse || b == kFalse) return kFalse;
      if (a == kTrue) return b;
      if (b == kTrue) return a;
      if (a == b) return a;
      break;
    case Op::Or:
      if (a == kTrue || b == kTrue) return kTrue;
      if (a == kFalse) return b;
      if (b == kFalse) return a;
      if (a == b) return a;
      break;
    case Op::Iff:
      if (a == kTrue) return b;
      if (b == kTrue) return a;
      if (a == kFalse) return negate_rec(b);
      if (b == kFalse) return negate_rec(a);
      if (a == b) return kTrue;
      break;
    case Op::Implies:
      if (a == kFalse || b == kTrue) return kTrue;
      if (a == kTrue) return b;
      if (a == b) return kTrue;
      if (b == kFalse) return negate_rec(a);
      break;
  }
  if (commutative(op) && a > b) std::swap(a, b);
  auto key = cache_key(op_tag(op), a, b);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  VarId va = nodes_[a].var, vb = nodes_[b].var; // terminals never reach here
  VarId v = std::min(va, vb);
  NodeRef a0 = va == v ? nodes_[a].low : a, a1 = va == v ? nodes_[a].high : a;
  NodeRef b0 = vb == v ? nodes_[b].low : b, b1 = vb == v ? nodes_[b].high : b;
  NodeRef r = mk(v, apply_rec(op, a0, b0), apply_rec(op, a1, b1));
  cache_.emplace(key, r);
  return r;
}

NodeRef Manager::negate(NodeRef a) { return negate_rec(a); }

NodeRef Manager::negate_rec(NodeRef a) {
  if (a == kFalse) return kTrue;
  if (a == kTrue) return kFalse;
  auto key = cache_key(TagNot, a, 0);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  NodeRef r = mk(nodes_[a].var, negate_rec(nodes_[a].low), negate_rec(nodes_[a].high));
  cache_.emplace(key, r);
  return r;
}

std::uint32_t Manager::intern_set(std::vector<VarId> set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  auto key = bytes_of(set.data(), set.size() * sizeof(VarId));
  auto it = set_index_.find(key);
  if (it != set_index_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(sets_.size());
  sets_.push_back(std::move(set));
  set_index_.emplace(std::move(key), id);
  return id;
}

NodeRef Manager::exists(std::span<const VarId> set, NodeRef a) {
  if (set.empty()) return a;
  return exists_rec(a, intern_set({set.begin(), set.end()}));
}

NodeRef Manager::exists_rec(NodeRef a, std::uint32_t set_id) {
  if (is_const(a)) return a;
  const auto& set = sets_[set_id];
  VarId v = nodes_[a].var;
  if (v > set.back()) return a; // ordering: no set var occurs below a
  auto key = cache_key(TagExists, a, set_id);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  NodeRef lo = exists_rec(nodes_[a].low, set_id);
  NodeRef hi = exists_rec(nodes_[a].high, set_id);
  NodeRef r = std::binary_search(set.begin(), set.end(), v)
                  ? apply_rec(Op::Or, lo, hi)
                  : mk(v, lo, hi);
  cache_.emplace(key, r);
  return r;
}

std::uint32_t Manager::intern_assignment(std::vector<std::pair<VarId, bool>> asg) {
  std::sort(asg.begin(), asg.end());
  asg.erase(std::unique(asg.begin(), asg.end()), asg.end());
  for (std::size_t i = 1; i < asg.size(); ++i)
    if (asg[i - 1].first == asg[i].first)
      throw InternalError("bdd: conflicting restrict assignment");
  auto key = bytes_of(asg.data(), asg.size() * sizeof(asg[0]));
  auto it = assignment_index_.find(key);
  if (it != assignment_index_.end()) return it->second;
  auto id = static_cast<std::uint32_t>(assignments_.size());
  assignments_.push_back(std::move(asg));
  assignment_index_.emplace(std::move(key), id);
  return id;
}

NodeRef Manager::restrict(std::span<const std::pair<VarId, bool>> assignment, NodeRef a) {
  if (assignment.empty()) return a;
  return restrict_rec(a, intern_assignment({assignment.begin(), assignment.end()}));
}

NodeRef Manager::restrict_rec(NodeRef a, std::uint32_t asg_id) {
  if (is_const(a)) return a;
  const auto& asg = assignments_[asg_id];
  VarId v = nodes_[a].var;
  if (v > asg.back().first) return a;
  auto key = cache_key(TagRestrict, a, asg_id);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  auto it2 = std::lower_bound(asg.begin(), asg.end(), std::pair<VarId, bool>{v, false});
  NodeRef r;
  if (it2 != asg.end() && it2->first == v) {
    r = restrict_rec(it2->second ? nodes_[a].high : nodes_[a].low, asg_id);
  } else {
    r = mk(v, restrict_rec(nodes_[a].low, asg_id), restrict_rec(nodes_[a].high, asg_id));
  }
  cache_.emplace(key, r);
  return r;
}

NodeRef Manager::rename(std::span<const VarId> from, std::span<const VarId> to, NodeRef a) {
  if (from.size() != to.size())
    throw InternalError("bdd: rename arity mismatch");
  std::vector<VarId> f, t;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (from[i] != to[i]) {
      f.push_back(from[i]);
      t.push_back(to[i]);
    }
  }
  if (f.empty()) return a;
  {
    std::vector<VarId> s = f;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw InternalError("bdd: rename sources not distinct");
  }
  bool overlap = false;
  for (VarId tv : t)
    overlap |= std::find(f.begin(), f.end(), tv) != f.end();
  if (overlap) {
    // Route through scratch variables free in a, f and t.
    std::unordered_set<VarId> busy;
    for (VarId v : support(a)) busy.insert(v);
    for (VarId v : f) busy.insert(v);
    for (VarId v : t) busy.insert(v);
    std::vector<VarId> s;
    for (VarId v = 0; v < vars_.size() && s.size() < f.size(); ++v)
      if (vars_[v].kind == VarKind::Scratch && !busy.count(v)) s.push_back(v);
    if (s.size() < f.size())
      throw InternalError("bdd: not enough free scratch variables for rename");
    return rename(s, t, rename(f, s, a));
  }
  NodeRef conj = kTrue;
  for (std::size_t i = 0; i < f.size(); ++i)
    conj = apply_rec(Op::And, conj,
                     apply_rec(Op::Iff, mk_var(f[i]), mk_var(t[i])));
  return exists(f, apply_rec(Op::And, a, conj));
}

bool Manager::is_positive(NodeRef a) const {
  while (!is_const(a)) a = nodes_[a].high;
  return a == kTrue;
}

bool Manager::eval(NodeRef a, const std::vector<bool>& assignment) const {
  while (!is_const(a)) {
    VarId v = nodes_[a].var;
    assert(v < assignment.size());
    a = assignment[v] ? nodes_[a].high : nodes_[a].low;
  }
  return a == kTrue;
}

std::vector<VarId> Manager::support(NodeRef a) const {
  std::unordered_set<NodeRef> seen;
  std::unordered_set<VarId> vars;
  std::vector<NodeRef> stack{a};
  while (!stack.empty()) {
    NodeRef n = stack.back();
    stack.pop_back();
    if (is_const(n) || !seen.insert(n).second) continue;
    vars.insert(nodes_[n].var);
    stack.push_back(nodes_[n].low);
    stack.push_back(nodes_[n].high);
  }
  std::vector<VarId> out(vars.begin(), vars.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Manager::count_nodes(NodeRef a) const {
  std::unordered_set<NodeRef> seen;
  std::vector<NodeRef> stack{a};
  while (!stack.empty()) {
    NodeRef n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    if (is_const(n)) continue;
    stack.push_back(nodes_[n].low);
    stack.push_back(nodes_[n].high);
  }
  return seen.size();
}

std::vector<Clause> prime_implicate_cnf(Manager& m, NodeRef a) {
  if (a == Manager::kTrue) return {};
  if (a == Manager::kFalse) return {Clause{}};
  auto supp = m.support(a);
  const std::size_t n = supp.size();
  if (n > 12)
    throw InternalError("prime_implicate_cnf: support too large");

  std::vector<Clause> kept;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> kept_masks; // (pos, neg) over supp

  std::vector<std::size_t> comb;
  // Enumerate variable subsets of each size in lexicographic order, and for
  // each subset all sign patterns (bit i of `signs` = comb[i] negated, LSB
  // first). Subset-subsumed candidates are skipped, so what remains are
  // exactly the prime implicates, in a reproducible order.
  auto run_signs = [&](const std::vector<std::size_t>& c) {
    for (std::uint32_t signs = 0; signs < (1u << c.size()); ++signs) {
      std::uint32_t pos = 0, neg = 0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (signs >> i & 1) neg |= 1u << c[i];
        else pos |= 1u << c[i];
      }
      bool subsumed = false;
      for (auto [p, q] : kept_masks)
        if ((p & ~pos) == 0 && (q & ~neg) == 0) { subsumed = true; break; }
      if (subsumed) continue;
      NodeRef cl = Manager::kFalse;
      Clause lits;
      for (std::size_t i = 0; i < c.size(); ++i) {
        bool negd = (signs >> i & 1) != 0;
        NodeRef l = m.mk_var(supp[c[i]]);
        if (negd) l = m.negate(l);
        cl = m.apply(Op::Or, cl, l);
        lits.push_back({supp[c[i]], negd});
      }
      if (m.entails(a, cl)) {
        kept.push_back(std::move(lits));
        kept_masks.emplace_back(pos, neg);
      }
    }
  };
  auto combos = [&](auto&& self, std::size_t start, std::size_t want) -> void {
    if (want == 0) {
      run_signs(comb);
      return;
    }
    for (std::size_t i = start; i + want <= n; ++i) {
      comb.push_back(i);
      self(self, i + 1, want - 1);
      comb.pop_back();
    }
  };
  for (std::size_t k = 1; k <= n; ++k) combos(combos, 0, k);
  return kept;
}

NodeRef copy_by_name(const Manager& src, NodeRef a, Manager& dst) {
  std::unordered_map<NodeRef, NodeRef> memo;
  auto rec = [&](auto&& self, NodeRef n) -> NodeRef {
    if (n == Manager::kFalse) return Manager::kFalse;
    if (n == Manager::kTrue) return Manager::kTrue;
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    auto dv = dst.var_by_name(src.var(src.node_var(n)).name);
    if (!dv)
      throw InternalError("copy_by_name: variable missing in destination: " +
                          src.var(src.node_var(n)).name);
    NodeRef lo = self(self, src.node_low(n));
    NodeRef hi = self(self, src.node_high(n));
    // Destination order may differ, so build if-then-else with apply.
    NodeRef v = dst.mk_var(*dv);
    NodeRef r = dst.apply(Op::Or, dst.apply(Op::And, v, hi),
                          dst.apply(Op::And, dst.negate(v), lo));
    memo.emplace(n, r);
    return r;
  };
  return rec(rec, a);
}

} // namespace pground::bdd
