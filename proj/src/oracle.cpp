#include "pground/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "pground/errors.hpp"

namespace pground::oracle {

namespace {

using ast::Term;
using Bindings = std::map<std::string, Term>;

const Term& walk(const Term& t, const Bindings& b) {
  const Term* cur = &t;
  while (cur->is_var()) {
    auto it = b.find(cur->name);
    if (it == b.end()) break;
    cur = &it->second;
  }
  return *cur;
}

Term resolve(const Term& t, const Bindings& b) {
  const Term& w = walk(t, b);
  if (!w.is_compound()) return w;
  Term out = Term::compound(w.name, {});
  for (const auto& a : w.args) out.args.push_back(resolve(a, b));
  return out;
}

bool occurs(const std::string& v, const Term& t, const Bindings& b) {
  const Term& w = walk(t, b);
  if (w.is_var()) return w.name == v;
  for (const auto& a : w.args)
    if (occurs(v, a, b)) return true;
  return false;
}

bool unify(const Term& t1, const Term& t2, Bindings& b) {
  const Term& a = walk(t1, b);
  const Term& c = walk(t2, b);
  if (a.is_var() && c.is_var() && a.name == c.name) return true;
  if (a.is_var()) {
    if (occurs(a.name, c, b)) return false;
    Term bound = c; // copy before the map mutates references
    b.emplace(a.name, std::move(bound));
    return true;
  }
  if (c.is_var()) {
    if (occurs(c.name, a, b)) return false;
    Term bound = a;
    b.emplace(c.name, std::move(bound));
    return true;
  }
  if (a.kind != c.kind) return false;
  if (a.kind == Term::Kind::Int) return a.value == c.value;
  if (a.name != c.name || a.args.size() != c.args.size()) return false;
  // Unify argument copies: recursive unification may rebind, and `a`/`c`
  // reference storage inside the bindings map.
  Term ac = a, cc = c;
  for (std::size_t i = 0; i < ac.args.size(); ++i)
    if (!unify(ac.args[i], cc.args[i], b)) return false;
  return true;
}

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    out.push_back(t.name);
    return;
  }
  for (const auto& a : t.args) collect_vars(a, out);
}

} // namespace

bool is_ground(const ast::Term& t) {
  std::vector<std::string> vs;
  collect_vars(t, vs);
  return vs.empty();
}

Substitution canonicalize(std::vector<std::string> scope, const Bindings& raw) {
  std::sort(scope.begin(), scope.end());
  scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
  Substitution out;
  out.scope = scope;

  std::map<std::string, std::string> fresh; // range var -> Z#k
  int next = 0;
  std::function<Term(const Term&)> rename_range = [&](const Term& t) -> Term {
    if (t.is_var()) {
      auto it = fresh.find(t.name);
      if (it == fresh.end())
        it = fresh.emplace(t.name, "Z#" + std::to_string(++next)).first;
      return Term::var(it->second);
    }
    if (t.kind == Term::Kind::Int) return t;
    Term r = Term::compound(t.name, {});
    for (const auto& a : t.args) r.args.push_back(rename_range(a));
    return r;
  };

  for (const auto& u : out.scope)
    out.bind.emplace(u, rename_range(resolve(Term::var(u), raw)));
  return out;
}

Substitution identity_sub(std::vector<std::string> scope) {
  return canonicalize(std::move(scope), {});
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& u : s.scope) {
    if (!first) out += ", ";
    first = false;
    out += u + " -> " + ast::to_string(s.bind.at(u));
  }
  return out + "}";
}

std::optional<Substitution>
mgu(const std::vector<std::pair<ast::Term, ast::Term>>& eqs) {
  Bindings b;
  std::vector<std::string> scope;
  for (const auto& [l, r] : eqs) {
    collect_vars(l, scope);
    collect_vars(r, scope);
    if (!unify(l, r, b)) return std::nullopt;
  }
  return canonicalize(std::move(scope), b);
}

namespace {

// Remaps a substitution's auxiliary Z# variables into a private pool so two
// substitutions can be joined without capture.
Substitution retag_aux(const Substitution& s, const std::string& tag) {
  Substitution out;
  out.scope = s.scope;
  std::function<Term(const Term&)> go = [&](const Term& t) -> Term {
    if (t.is_var()) {
      if (t.name.starts_with("Z#")) return Term::var(tag + t.name);
      return t;
    }
    if (t.kind == Term::Kind::Int) return t;
    Term r = Term::compound(t.name, {});
    for (const auto& a : t.args) r.args.push_back(go(a));
    return r;
  };
  for (const auto& [u, t] : s.bind) out.bind.emplace(u, go(t));
  return out;
}

} // namespace

std::optional<Substitution> compose(const Substitution& a, const Substitution& b) {
  Substitution a2 = retag_aux(a, "L#");
  Substitution b2 = retag_aux(b, "R#");
  Bindings join;
  for (const auto& [u, t] : a2.bind)
    if (!unify(Term::var(u), t, join)) return std::nullopt;
  for (const auto& [v, t] : b2.bind)
    if (!unify(Term::var(v), t, join)) return std::nullopt;
  std::vector<std::string> scope = a.scope;
  scope.insert(scope.end(), b.scope.begin(), b.scope.end());
  return canonicalize(std::move(scope), join);
}

Substitution project(const Substitution& s, const std::set<std::string>& away) {
  std::vector<std::string> scope;
  for (const auto& u : s.scope)
    if (!away.count(u)) scope.push_back(u);
  Bindings raw(s.bind.begin(), s.bind.end());
  return canonicalize(std::move(scope), raw);
}

Substitution rename_sub(const Substitution& s,
                        const std::vector<std::pair<std::string, std::string>>& mapping) {
  std::map<std::string, std::string> fwd;
  for (const auto& [x, y] : mapping) {
    if (!fwd.emplace(x, y).second)
      throw InternalError("rename_sub: repeated source variable");
  }
  std::vector<std::string> scope;
  Bindings raw;
  for (const auto& u : s.scope) {
    auto it = fwd.find(u);
    const std::string& target = it == fwd.end() ? u : it->second;
    scope.push_back(target);
    raw.emplace(target, s.bind.at(u));
  }
  if (raw.size() != s.scope.size())
    throw InternalError("rename_sub: target variables collide");
  return canonicalize(std::move(scope), raw);
}

// --- bounded concrete execution ---------------------------------------------

namespace {

struct Interp {
  const ast::SourceProgram& prog;
  RunResult& result;
  std::map<ast::Pred, std::vector<const ast::Clause*>> defs;
  int fresh_counter = 0;

  Interp(const ast::SourceProgram& p, RunResult& r) : prog(p), result(r) {
    for (const auto& c : p.clauses) defs[ast::pred_of(c.head)].push_back(&c);
  }

  Term freshen(const Term& t, std::map<std::string, std::string>& names) {
    if (t.is_var()) {
      auto it = names.find(t.name);
      if (it == names.end())
        it = names.emplace(t.name, t.name + "#R" + std::to_string(fresh_counter)).first;
      return Term::var(it->second);
    }
    if (t.kind == Term::Kind::Int) return t;
    Term out = Term::compound(t.name, {});
    for (const auto& a : t.args) out.args.push_back(freshen(a, names));
    return out;
  }

  Substitution snapshot(const Term& atom, const Bindings& b) {
    Bindings raw;
    std::vector<std::string> scope;
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
      std::string xi = "x" + std::to_string(i + 1);
      scope.push_back(xi);
      raw.emplace(xi, resolve(atom.args[i], b));
    }
    return canonicalize(std::move(scope), raw);
  }

  static bool builtin_pred(const ast::Pred& p) {
    static const std::set<std::string> names{"=", "=<", ">=", "<", ">", "==", "is"};
    return p.arity == 2 && names.count(p.name);
  }

  // Yields extended bindings for each way the builtin succeeds (0 or 1 ways).
  void eval_builtin(const ast::Pred& p, const Term& atom, Bindings b,
                    const std::function<void(Bindings)>& yield) {
    if (p.name == "=") {
      if (unify(atom.args[0], atom.args[1], b)) yield(std::move(b));
      return;
    }
    Term l = resolve(atom.args[0], b), r = resolve(atom.args[1], b);
    if (p.name == "is") {
      if (r.kind != Term::Kind::Int) {
        ++result.instantiation_errors;
        return;
      }
      if (unify(atom.args[0], r, b)) yield(std::move(b));
      return;
    }
    if (l.kind != Term::Kind::Int || r.kind != Term::Kind::Int) {
      ++result.instantiation_errors;
      return;
    }
    bool ok = false;
    if (p.name == "=<") ok = l.value <= r.value;
    else if (p.name == ">=") ok = l.value >= r.value;
    else if (p.name == "<") ok = l.value < r.value;
    else if (p.name == ">") ok = l.value > r.value;
    else if (p.name == "==") ok = l.value == r.value;
    if (ok) yield(std::move(b));
  }

  void solve(const std::vector<Term>& goals, std::size_t at, Bindings b, int depth,
             const std::function<void(const Bindings&)>& yield) {
    if (at == goals.size()) {
      yield(b);
      return;
    }
    const Term& g = goals[at];
    ast::Pred p = ast::pred_of(g);
    if (builtin_pred(p)) {
      eval_builtin(p, g, std::move(b), [&](Bindings b2) {
        solve(goals, at + 1, std::move(b2), depth, yield);
      });
      return;
    }

    result.calls[p].insert(snapshot(g, b));
    if (depth == 0) {
      result.depth_cutoff = true;
      return;
    }
    auto it = defs.find(p);
    if (it == defs.end()) return;
    for (const ast::Clause* c : it->second) {
      ++fresh_counter;
      std::map<std::string, std::string> names;
      Term head = freshen(c->head, names);
      std::vector<Term> body;
      for (const auto& bg : c->body) body.push_back(freshen(bg, names));

      Bindings b2 = b;
      if (!unify(g, head, b2)) continue;
      solve(body, 0, std::move(b2), depth - 1, [&](const Bindings& b3) {
        result.answers[p].insert(snapshot(g, b3));
        solve(goals, at + 1, b3, depth, yield);
      });
    }
  }
};

} // namespace

RunResult concrete_run(const ast::SourceProgram& p,
                       const std::vector<ast::Term>& initial_goals, int depth) {
  RunResult result;
  Interp interp(p, result);
  for (const auto& g : initial_goals)
    interp.solve({g}, 0, {}, depth, [](const Bindings&) {});
  return result;
}

// --- abstraction and enumeration --------------------------------------------

domain::PosFormula alpha_pos(space::AnalysisSpace& sp,
                             const std::set<Substitution>& theta, int arity) {
  bdd::Manager& m = sp.mgr;
  bdd::NodeRef acc = bdd::Manager::kFalse;
  for (const auto& s : theta) {
    if (static_cast<int>(s.scope.size()) != arity)
      throw InternalError("alpha_pos: substitution scope/arity mismatch");
    std::map<std::string, bdd::VarId> range_slot;
    auto slot = [&](const std::string& v) {
      auto it = range_slot.find(v);
      if (it == range_slot.end()) {
        if (range_slot.size() >= sp.scratch.size())
          throw InternalError("alpha_pos: out of scratch variables");
        it = range_slot.emplace(v, sp.scratch[range_slot.size()]).first;
      }
      return it->second;
    };
    bdd::NodeRef conj = bdd::Manager::kTrue;
    for (int i = 0; i < arity; ++i) {
      std::vector<std::string> vs;
      collect_vars(s.bind.at("x" + std::to_string(i + 1)), vs);
      bdd::NodeRef deps = bdd::Manager::kTrue;
      for (const auto& v : vs)
        deps = m.apply(bdd::Op::And, deps, m.mk_var(slot(v)));
      conj = m.apply(bdd::Op::And, conj,
                     m.apply(bdd::Op::Iff, m.mk_var(sp.xs[i]), deps));
    }
    std::vector<bdd::VarId> used;
    for (const auto& [v, id] : range_slot) used.push_back(id);
    acc = m.apply(bdd::Op::Or, acc, m.exists(used, conj));
  }
  return domain::make_pos(m, acc, sp.x_prefix(arity));
}

std::vector<bdd::NodeRef> enumerate_pos(bdd::Manager& m,
                                        const std::vector<bdd::VarId>& u) {
  if (u.size() > 3)
    throw InternalError("enumerate_pos: size guard exceeded");
  const int rows = 1 << u.size();
  std::vector<bdd::NodeRef> out;
  for (std::uint32_t table = 0; table < (1u << rows); ++table) {
    if (!(table >> (rows - 1) & 1)) continue; // all-true row must be 1
    bdd::NodeRef f = bdd::Manager::kFalse;
    for (int row = 0; row < rows; ++row) {
      if (!(table >> row & 1)) continue;
      bdd::NodeRef minterm = bdd::Manager::kTrue;
      for (std::size_t i = 0; i < u.size(); ++i) {
        bdd::NodeRef lit = m.mk_var(u[i]);
        if (!(row >> i & 1)) lit = m.negate(lit);
        minterm = m.apply(bdd::Op::And, minterm, lit);
      }
      f = m.apply(bdd::Op::Or, f, minterm);
    }
    if (m.is_positive(f)) out.push_back(f);
  }
  return out;
}

std::vector<domain::MonotoneMap>
enumerate_monotone(bdd::Manager& m, const domain::ParamSpace& ps,
                   const std::vector<bdd::VarId>& u) {
  if (ps.params.size() > 3 || u.size() > 2)
    throw InternalError("enumerate_monotone: size guard exceeded");
  auto candidates = enumerate_pos(m, u);
  const std::size_t n_subsets = std::size_t{1} << ps.params.size();

  // Subsets ordered by popcount so that all sub-subsets of X are assigned
  // before X; monotonicity is then a check against immediate predecessors.
  std::vector<std::uint32_t> subset_order(n_subsets);
  for (std::uint32_t i = 0; i < n_subsets; ++i) subset_order[i] = i;
  std::stable_sort(subset_order.begin(), subset_order.end(),
                   [](std::uint32_t a, std::uint32_t b) {
                     return std::popcount(a) < std::popcount(b);
                   });

  std::vector<domain::MonotoneMap> out;
  std::vector<bdd::NodeRef> values(n_subsets);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == n_subsets) {
      domain::MonotoneMap phi;
      phi.values = values;
      out.push_back(std::move(phi));
      return;
    }
    std::uint32_t x = subset_order[pos];
    for (bdd::NodeRef cand : candidates) {
      bool ok = true;
      for (std::size_t i = 0; ok && i < ps.params.size(); ++i)
        if (x >> i & 1) ok = m.entails(cand, values[x & ~(1u << i)]);
      if (!ok) continue;
      values[x] = cand;
      self(self, pos + 1);
    }
  };
  rec(rec, 0);
  return out;
}

} // namespace pground::oracle
