#include "pground/domain.hpp"

#include <algorithm>

#include "pground/errors.hpp"

namespace pground::domain {

namespace {

std::vector<bdd::VarId> sorted_unique(std::vector<bdd::VarId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool subset(const std::vector<bdd::VarId>& small, const std::vector<bdd::VarId>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

void require_same_manager(const PosFormula& a, const PosFormula& b) {
  if (a.mgr != b.mgr)
    throw InternalError("pos op across distinct managers");
}

} // namespace

PosFormula make_pos(bdd::Manager& m, bdd::NodeRef node, std::vector<bdd::VarId> scope) {
  PosFormula f{&m, node, sorted_unique(std::move(scope))};
  if (node != bdd::Manager::kFalse && !m.is_positive(node))
    throw InternalError("formula is neither positive nor FALSE");
  if (!subset(m.support(node), f.scope))
    throw InternalError("formula support escapes its scope");
  return f;
}

PosFormula pos_and(const PosFormula& a, const PosFormula& b) {
  require_same_manager(a, b);
  std::vector<bdd::VarId> scope = a.scope;
  scope.insert(scope.end(), b.scope.begin(), b.scope.end());
  return make_pos(*a.mgr, a.mgr->apply(bdd::Op::And, a.node, b.node), std::move(scope));
}

PosFormula pos_or(const PosFormula& a, const PosFormula& b) {
  require_same_manager(a, b);
  std::vector<bdd::VarId> scope = a.scope;
  scope.insert(scope.end(), b.scope.begin(), b.scope.end());
  return make_pos(*a.mgr, a.mgr->apply(bdd::Op::Or, a.node, b.node), std::move(scope));
}

PosFormula pos_project(const PosFormula& a, std::span<const bdd::VarId> away) {
  for (bdd::VarId v : away)
    if (a.mgr->var(v).kind == bdd::VarKind::Param)
      throw UsageError("cannot project away parameter " + a.mgr->var(v).name);
  std::vector<bdd::VarId> scope;
  for (bdd::VarId v : a.scope)
    if (std::find(away.begin(), away.end(), v) == away.end()) scope.push_back(v);
  return make_pos(*a.mgr, a.mgr->exists(away, a.node), std::move(scope));
}

PosFormula pos_rename(const PosFormula& a, std::span<const bdd::VarId> from,
                      std::span<const bdd::VarId> to) {
  std::vector<bdd::VarId> scope;
  for (bdd::VarId v : a.scope)
    if (std::find(from.begin(), from.end(), v) == from.end()) scope.push_back(v);
  scope.insert(scope.end(), to.begin(), to.end());
  return make_pos(*a.mgr, a.mgr->rename(from, to, a.node), std::move(scope));
}

ConElement con_meet(ConElement a, ConElement b) { return {a.bits | b.bits}; }
ConElement con_join(ConElement a, ConElement b) { return {a.bits & b.bits}; }

std::vector<std::pair<bdd::VarId, bool>> mm(const ParamSpace& ps, ConElement g) {
  std::vector<std::pair<bdd::VarId, bool>> out;
  for (std::size_t i = 0; i < ps.params.size(); ++i)
    out.emplace_back(ps.params[i], g.has(static_cast<int>(i)));
  return out;
}

bdd::NodeRef bf(bdd::Manager& m, std::span<const std::pair<bdd::VarId, bool>> assignment) {
  bdd::NodeRef acc = bdd::Manager::kTrue;
  for (auto [v, val] : assignment) {
    bdd::NodeRef lit = m.mk_var(v);
    if (!val) lit = m.negate(lit);
    acc = m.apply(bdd::Op::And, acc, lit);
  }
  return acc;
}

bdd::NodeRef bm(bdd::Manager& m, const ParamSpace& ps, ConElement g) {
  auto asg = mm(ps, g);
  return bf(m, asg);
}

bool is_monotone(bdd::Manager& m, const ParamSpace& ps, const MonotoneMap& phi) {
  const std::size_t n = ps.params.size();
  if (phi.values.size() != (std::size_t{1} << n))
    throw InternalError("monotone map has wrong size");
  for (std::uint32_t x = 0; x < phi.values.size(); ++x) {
    // Checking each cover pair X ⊇ X\{i} suffices by transitivity.
    for (std::size_t i = 0; i < n; ++i) {
      if (!(x >> i & 1)) continue;
      if (!m.entails(phi.values[x], phi.values[x & ~(1u << i)])) return false;
    }
  }
  return true;
}

bdd::NodeRef nabla(bdd::Manager& m, const ParamSpace& ps, const MonotoneMap& phi) {
  for (bdd::NodeRef v : phi.values) {
    if (!m.is_positive(v))
      throw UsageError("map value outside Pos (not positive)");
    for (bdd::VarId sv : m.support(v))
      if (std::find(ps.params.begin(), ps.params.end(), sv) != ps.params.end())
        throw UsageError("map value mentions a parameter");
  }
  if (!is_monotone(m, ps, phi))
    throw UsageError("map is not monotone");
  bdd::NodeRef acc = bdd::Manager::kFalse;
  for (std::uint32_t x = 0; x < phi.values.size(); ++x) {
    bdd::NodeRef part = m.apply(bdd::Op::And, bm(m, ps, ConElement{x}), phi.values[x]);
    acc = m.apply(bdd::Op::Or, acc, part);
  }
  return acc;
}

MonotoneMap nabla_inv(bdd::Manager& m, const ParamSpace& ps, bdd::NodeRef h) {
  MonotoneMap phi;
  const std::size_t n = ps.params.size();
  for (std::uint32_t x = 0; x < (1u << n); ++x) {
    auto asg = mm(ps, ConElement{x});
    phi.values.push_back(m.restrict(asg, h));
  }
  // The pointwise decode can succeed on formulas outside the image (they
  // re-encode to something else), so verify by re-encoding.
  for (bdd::NodeRef v : phi.values)
    if (!m.is_positive(v))
      throw UsageError("formula is not an encoding of a monotone map");
  if (!is_monotone(m, ps, phi) || nabla(m, ps, phi) != h)
    throw UsageError("formula is not an encoding of a monotone map");
  return phi;
}

PosFormula encode_input(bdd::Manager& m, const ParamSpace& ps) {
  if (ps.params.size() != ps.goal_args.size())
    throw InternalError("parameter space arity mismatch");
  bdd::NodeRef acc = bdd::Manager::kTrue;
  for (std::size_t i = 0; i < ps.params.size(); ++i)
    acc = m.apply(bdd::Op::And, acc,
                  m.apply(bdd::Op::Implies, m.mk_var(ps.params[i]),
                          m.mk_var(ps.goal_args[i])));
  std::vector<bdd::VarId> scope = ps.params;
  scope.insert(scope.end(), ps.goal_args.begin(), ps.goal_args.end());
  return make_pos(m, acc, std::move(scope));
}

PosFormula instantiate(const PosFormula& h, const ParamSpace& ps, ConElement g) {
  auto asg = mm(ps, g);
  bdd::NodeRef r = h.mgr->restrict(asg, h.node);
  std::vector<bdd::VarId> scope;
  for (bdd::VarId v : h.scope)
    if (std::find(ps.params.begin(), ps.params.end(), v) == ps.params.end())
      scope.push_back(v);
  return make_pos(*h.mgr, r, std::move(scope));
}

} // namespace pground::domain
