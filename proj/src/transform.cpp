#include "pground/transform.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "pground/errors.hpp"
#include "pground/formula_text.hpp"

namespace pground::transform {

// --- magic transformation ---------------------------------------------------

ast::SourceProgram magic_transform(const ast::SourceProgram& p,
                                   const builtins::Table& table) {
  ast::SourceProgram out;
  out.config = p.config;
  auto is_builtin = [&](const ast::Term& atom) {
    return table.contains(ast::pred_of(atom));
  };
  for (const auto& c : p.clauses) {
    ast::Pred hp = ast::pred_of(c.head);
    ast::Term call_head = c.head;
    call_head.name = call_pred_name(hp.name);

    // One call_q clause per user body atom, guarded by call_p and everything
    // to the atom's left (builtins included, answers for user atoms).
    auto prefix_body = [&](std::size_t upto) {
      std::vector<ast::Term> body{call_head};
      for (std::size_t j = 0; j < upto; ++j) {
        ast::Term b = c.body[j];
        if (!is_builtin(b)) b.name = ans_pred_name(b.name);
        body.push_back(std::move(b));
      }
      return body;
    };
    for (std::size_t k = 0; k < c.body.size(); ++k) {
      if (is_builtin(c.body[k])) continue;
      ast::Term h = c.body[k];
      h.name = call_pred_name(h.name);
      out.clauses.push_back({std::move(h), prefix_body(k)});
    }

    ast::Term ans_head = c.head;
    ans_head.name = ans_pred_name(hp.name);
    out.clauses.push_back({std::move(ans_head), prefix_body(c.body.size())});
  }
  return out;
}

// --- clause dependency graph ------------------------------------------------

CallGraph build_call_graph(const ast::SourceProgram& magic,
                           const builtins::Table& table) {
  CallGraph g;
  g.n = static_cast<int>(magic.clauses.size());
  g.succ.resize(g.n);
  std::map<ast::Pred, std::vector<int>> defs;
  for (int i = 0; i < g.n; ++i)
    defs[ast::pred_of(magic.clauses[i].head)].push_back(i);
  for (int i = 0; i < g.n; ++i) {
    std::set<int> out;
    for (const auto& b : magic.clauses[i].body) {
      ast::Pred bp = ast::pred_of(b);
      if (table.contains(bp)) continue;
      if (auto it = defs.find(bp); it != defs.end())
        out.insert(it->second.begin(), it->second.end());
    }
    g.succ[i].assign(out.begin(), out.end());
  }
  return g;
}

SccOrder scc_order(const CallGraph& g) {
  // Tarjan; components are emitted callees-first, which is exactly the
  // bottom-up evaluation order.
  SccOrder order;
  std::vector<int> index(g.n, -1), low(g.n, 0);
  std::vector<bool> on_stack(g.n, false);
  std::vector<int> stack;
  int next = 0;

  auto strongconnect = [&](auto&& self, int v) -> void {
    index[v] = low[v] = next++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : g.succ[v]) {
      if (index[w] < 0) {
        self(self, w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      SccOrder::Component comp;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.clauses.push_back(w);
      } while (w != v);
      std::sort(comp.clauses.begin(), comp.clauses.end());
      comp.cyclic = comp.clauses.size() > 1;
      if (!comp.cyclic) {
        int c = comp.clauses[0];
        comp.cyclic = std::find(g.succ[c].begin(), g.succ[c].end(), c) !=
                      g.succ[c].end();
      }
      order.components.push_back(std::move(comp));
    }
  };
  for (int v = 0; v < g.n; ++v)
    if (index[v] < 0) strongconnect(strongconnect, v);
  return order;
}

SccOrder with_seed(SccOrder order, int seed_index) {
  SccOrder out;
  out.components.push_back({{seed_index}, false});
  for (auto& c : order.components) out.components.push_back(std::move(c));
  return out;
}

// --- normalization ----------------------------------------------------------

namespace {

// Per-clause numbering state. Variable occurrences are shared via memo;
// every non-variable occurrence gets a fresh local plus an equation, and
// nested arguments are flattened breadth-first in discovery order.
struct Numbering {
  std::map<std::string, int> memo;
  int next = 1;
  std::deque<std::pair<int, ast::Term>> queue;

  int fresh() { return next++; }

  int var_local(const ast::Term& v) {
    auto it = memo.find(v.name);
    if (it != memo.end()) return it->second;
    int l = fresh();
    memo.emplace(v.name, l);
    return l;
  }

  int arg_local(const ast::Term& t) {
    if (t.is_var()) return var_local(t);
    int l = fresh();
    queue.emplace_back(l, t);
    return l;
  }

  void flush(std::vector<NormItem>& body) {
    while (!queue.empty()) {
      auto [lhs, t] = std::move(queue.front());
      queue.pop_front();
      NormEq eq;
      eq.lhs = lhs;
      switch (t.kind) {
        case ast::Term::Kind::Var:
          eq.rhs_is_var = true;
          eq.rhs_var = var_local(t);
          break;
        case ast::Term::Kind::Int:
          eq.rhs_is_int = true;
          eq.int_value = t.value;
          break;
        case ast::Term::Kind::Compound:
          eq.functor = t.name;
          for (const auto& a : t.args) eq.rhs_args.push_back(arg_local(a));
          break;
      }
      body.push_back(std::move(eq));
    }
  }

  void atom(const ast::Term& a, std::vector<NormItem>& body) {
    NormCall call{ast::pred_of(a), {}};
    for (const auto& t : a.args) call.args.push_back(arg_local(t));
    body.push_back(std::move(call));
    flush(body);
  }
};

bool ans_style(const ast::Clause& c) {
  const std::string& h = c.head.name;
  if (!h.starts_with("ans_") || c.body.empty()) return false;
  const ast::Term& g = c.body.front();
  return g.is_compound() && g.name == call_pred_name(h.substr(4)) &&
         g.args == c.head.args;
}

} // namespace

std::vector<NormClause> normalize(const ast::SourceProgram& magic) {
  std::vector<NormClause> out;
  for (const auto& c : magic.clauses) {
    NormClause nc;
    nc.head = ast::pred_of(c.head);
    Numbering num;

    if (ans_style(c)) {
      // Head and guard share their argument variables positionally: the
      // magic transform emits them with identical argument terms.
      for (const auto& t : c.head.args) {
        int h = num.fresh();
        nc.head_args.push_back(h);
        if (t.is_var() && !num.memo.count(t.name)) {
          num.memo.emplace(t.name, h);
        } else {
          // Repeated head variable (var-var equation) or non-variable arg.
          num.queue.emplace_back(h, t);
        }
      }
      nc.body.push_back(NormCall{ast::pred_of(c.body.front()), nc.head_args});
      num.flush(nc.body);
      for (std::size_t i = 1; i < c.body.size(); ++i) num.atom(c.body[i], nc.body);
    } else {
      for (const auto& b : c.body) num.atom(b, nc.body);
      std::set<int> used;
      for (const auto& t : c.head.args) {
        int h;
        if (t.is_var()) {
          auto it = num.memo.find(t.name);
          if (it == num.memo.end()) {
            h = num.fresh();
            num.memo.emplace(t.name, h);
          } else if (!used.count(it->second)) {
            h = it->second;
          } else {
            h = num.fresh();
            num.queue.emplace_back(h, t);
          }
        } else {
          h = num.fresh();
          num.queue.emplace_back(h, t);
        }
        nc.head_args.push_back(h);
        used.insert(h);
      }
      num.flush(nc.body);
    }
    nc.n_locals = num.next - 1;
    out.push_back(std::move(nc));
  }
  return out;
}

std::string to_string(const NormClause& c) {
  auto var = [](int i) { return "x" + std::to_string(i); };
  std::string out = c.head.name;
  if (!c.head_args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < c.head_args.size(); ++i) {
      if (i) out += ',';
      out += var(c.head_args[i]);
    }
    out += ')';
  }
  if (!c.body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i) out += ", ";
      if (const auto* eq = std::get_if<NormEq>(&c.body[i])) {
        out += var(eq->lhs) + " = ";
        if (eq->rhs_is_var) {
          out += var(eq->rhs_var);
        } else if (eq->rhs_is_int) {
          out += std::to_string(eq->int_value);
        } else {
          out += "'" + eq->functor + "'";
          if (!eq->rhs_args.empty()) {
            out += '(';
            for (std::size_t j = 0; j < eq->rhs_args.size(); ++j) {
              if (j) out += ',';
              out += var(eq->rhs_args[j]);
            }
            out += ')';
          }
        }
      } else {
        const auto& call = std::get<NormCall>(c.body[i]);
        out += call.pred.name;
        if (!call.args.empty()) {
          out += '(';
          for (std::size_t j = 0; j < call.args.size(); ++j) {
            if (j) out += ',';
            out += var(call.args[j]);
          }
          out += ')';
        }
      }
    }
  }
  out += '.';
  return out;
}

// --- abstract compilation ---------------------------------------------------

int required_locals(const std::vector<NormClause>& norm, const ast::Pred& goal) {
  int k = goal.arity;
  for (const auto& c : norm) {
    k = std::max(k, c.n_locals);
    for (const auto& item : c.body)
      if (const auto* call = std::get_if<NormCall>(&item))
        k = std::max(k, call->pred.arity);
  }
  return k;
}

AbstractProgram abstract_compile(const std::vector<NormClause>& norm,
                                 const builtins::Table& table,
                                 const ast::Pred& goal,
                                 const CompileOptions& opts,
                                 space::AnalysisSpace& sp) {
  if (static_cast<int>(sp.xs.size()) < required_locals(norm, goal))
    throw InternalError("analysis space has too few local variables");
  bdd::Manager& m = sp.mgr;

  AbstractProgram out;
  out.goal = goal;
  out.parametric = opts.parametric;

  std::set<ast::Pred> universe;
  auto source_of = [](const ast::Pred& p) -> ast::Pred {
    if (p.name.starts_with("call_")) return {p.name.substr(5), p.arity};
    if (p.name.starts_with("ans_")) return {p.name.substr(4), p.arity};
    return p;
  };

  for (const auto& nc : norm) {
    AbstractClause ac;
    ac.head = nc.head;
    universe.insert(nc.head);
    for (int l : nc.head_args) ac.head_args.push_back(sp.x(l));
    for (int i = 1; i <= nc.n_locals; ++i) ac.locals.push_back(sp.x(i));
    bdd::NodeRef acc = bdd::Manager::kTrue;
    for (const auto& item : nc.body) {
      if (const auto* eq = std::get_if<NormEq>(&item)) {
        bdd::NodeRef rhs = bdd::Manager::kTrue;
        if (eq->rhs_is_var) {
          rhs = m.mk_var(sp.x(eq->rhs_var));
        } else if (!eq->rhs_is_int) {
          for (int a : eq->rhs_args)
            rhs = m.apply(bdd::Op::And, rhs, m.mk_var(sp.x(a)));
        } // integers are ground constructors: rhs stays TRUE
        acc = m.apply(bdd::Op::And, acc,
                      m.apply(bdd::Op::Iff, m.mk_var(sp.x(eq->lhs)), rhs));
      } else {
        const auto& call = std::get<NormCall>(item);
        std::vector<bdd::VarId> args;
        for (int a : call.args) args.push_back(sp.x(a));
        if (table.contains(call.pred)) {
          acc = m.apply(bdd::Op::And, acc, table.pattern(call.pred, m, args));
        } else {
          universe.insert(call.pred);
          ac.body_calls.emplace_back(call.pred, std::move(args));
        }
      }
    }
    ac.constraint = acc;
    out.clauses.push_back(std::move(ac));
  }

  // Goal seed clause, appended last.
  {
    AbstractClause seed;
    seed.head = {call_pred_name(goal.name), goal.arity};
    seed.head_args = sp.x_prefix(goal.arity);
    seed.locals = seed.head_args;
    if (opts.parametric) {
      out.param_space.params.assign(sp.params.begin(), sp.params.begin() + goal.arity);
      out.param_space.goal_args = sp.x_prefix(goal.arity);
      seed.constraint = domain::encode_input(m, out.param_space).node;
    } else if (!opts.input_formula.empty()) {
      bdd::NodeRef n = formula_text::parse(m, opts.input_formula);
      if (n != bdd::Manager::kFalse && !m.is_positive(n))
        throw UsageError("input formula must be positive (or 0)");
      auto supp = m.support(n);
      for (bdd::VarId v : supp)
        if (std::find(seed.head_args.begin(), seed.head_args.end(), v) ==
            seed.head_args.end())
          throw UsageError("input formula may only mention goal argument variables x1..x" +
                           std::to_string(goal.arity));
      seed.constraint = n;
    } else {
      seed.constraint = bdd::Manager::kTrue;
    }
    universe.insert(seed.head);
    universe.insert({ans_pred_name(goal.name), goal.arity});
    out.seed_index = static_cast<int>(out.clauses.size());
    out.clauses.push_back(std::move(seed));
  }

  out.predicates.assign(universe.begin(), universe.end());
  std::set<ast::Pred> sources;
  for (const auto& p : out.predicates) sources.insert(source_of(p));
  out.source_preds.assign(sources.begin(), sources.end());
  return out;
}

} // namespace pground::transform
