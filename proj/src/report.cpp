#include "pground/report.hpp"

#include <algorithm>

#include "pground/formula_text.hpp"

namespace pground::report {

namespace {

std::string args_list(int arity) {
  std::string out = "(";
  for (int i = 1; i <= arity; ++i) {
    if (i > 1) out += ",";
    out += "x" + std::to_string(i);
  }
  out += ")";
  return arity == 0 ? std::string() : out;
}

} // namespace

int count_atoms(const transform::AbstractProgram& p) {
  int n = 0;
  for (const auto& c : p.clauses) n += 1 + static_cast<int>(c.body_calls.size());
  return n;
}

RunReport build_report(const pipeline::Analysis& a, const std::string& program_name,
                       const std::optional<domain::ConElement>& at,
                       const std::optional<std::string>& at_text) {
  RunReport r;
  r.program = program_name;
  r.goal = a.program.goal.key();
  r.mode = a.parametric ? "parametric" : "non-parametric";
  bdd::Manager& m = a.space->mgr;
  if (a.parametric)
    for (bdd::VarId v : a.program.param_space.params)
      r.params.push_back(m.var(v).name);
  r.instantiated_at = at_text;

  for (const auto& sp : a.program.source_preds) {
    PredFormulas pf;
    pf.source = sp;
    auto fill = [&](const ast::Pred& key, std::string& pretty,
                    std::vector<std::string>& cnf, bool& reachable) {
      domain::PosFormula f = a.result.at(key);
      if (at) f = domain::instantiate(f, a.program.param_space, *at);
      reachable = !f.is_false();
      pretty = formula_text::to_text(m, f.node);
      if (!f.is_false()) cnf = formula_text::cnf_strings(m, f.node);
    };
    fill({transform::call_pred_name(sp.name), sp.arity}, pf.call_pretty,
         pf.call_cnf, pf.call_reachable);
    fill({transform::ans_pred_name(sp.name), sp.arity}, pf.ans_pretty,
         pf.ans_cnf, pf.ans_reachable);
    r.predicates.push_back(std::move(pf));
  }

  r.atoms = count_atoms(a.program);
  r.sccs = static_cast<int>(a.stats.sccs.size());
  r.iterations = a.stats.total_iterations;
  r.bdd_nodes = a.stats.bdd_nodes;
  r.wall_us = a.stats.wall_us;
  return r;
}

std::string to_text(const RunReport& r) {
  std::string out;
  out += "% program: " + r.program + "\n";
  out += "% goal: " + r.goal + "   mode: " + r.mode;
  if (!r.params.empty()) {
    out += "   params:";
    for (const auto& p : r.params) out += " " + p;
  }
  if (r.instantiated_at) out += "   instantiated at: " + *r.instantiated_at;
  out += "\n";
  out += "% atoms: " + std::to_string(r.atoms) + "   sccs: " + std::to_string(r.sccs) +
         "   iterations: " + std::to_string(r.iterations) +
         "   bdd nodes: " + std::to_string(r.bdd_nodes) +
         "   solve: " + std::to_string(r.wall_us) + " us\n";
  for (const auto& pf : r.predicates) {
    const std::string args = args_list(pf.source.arity);
    out += "call_" + pf.source.name + args + " :- " + pf.call_pretty + ".\n";
    out += "ans_" + pf.source.name + args + " :- " + pf.ans_pretty + ".\n";
  }
  return out;
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["program"] = r.program;
  j["goal"] = r.goal;
  j["mode"] = r.mode;
  j["params"] = r.params;
  if (r.instantiated_at) j["instantiated_at"] = *r.instantiated_at;
  nlohmann::json preds = nlohmann::json::object();
  for (const auto& pf : r.predicates) {
    nlohmann::json e;
    e["call"] = {{"cnf", pf.call_cnf}, {"pretty", pf.call_pretty}};
    e["ans"] = {{"cnf", pf.ans_cnf}, {"pretty", pf.ans_pretty}};
    e["reachable"] = {{"call", pf.call_reachable}, {"ans", pf.ans_reachable}};
    preds[pf.source.key()] = std::move(e);
  }
  j["predicates"] = std::move(preds);
  j["stats"] = {{"atoms", r.atoms},
                {"sccs", r.sccs},
                {"iterations", r.iterations},
                {"bdd_nodes", r.bdd_nodes},
                {"wall_us", r.wall_us}};
  return j;
}

std::string dump_abstract(const pipeline::Analysis& a) {
  bdd::Manager& m = a.space->mgr;
  std::string out = "% abstract program (seed clause last)\n% component order:";
  for (const auto& comp : a.order.components) {
    out += " {";
    for (std::size_t i = 0; i < comp.clauses.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(comp.clauses[i]);
    }
    out += "}";
  }
  out += "\n";
  for (std::size_t i = 0; i < a.program.clauses.size(); ++i) {
    const auto& c = a.program.clauses[i];
    out += "[" + std::to_string(i) + "] " + c.head.name;
    if (!c.head_args.empty()) {
      out += "(";
      for (std::size_t k = 0; k < c.head_args.size(); ++k) {
        if (k) out += ",";
        out += m.var(c.head_args[k]).name;
      }
      out += ")";
    }
    out += " :- ";
    for (const auto& [pred, args] : c.body_calls) {
      out += pred.name;
      if (!args.empty()) {
        out += "(";
        for (std::size_t k = 0; k < args.size(); ++k) {
          if (k) out += ",";
          out += m.var(args[k]).name;
        }
        out += ")";
      }
      out += ", ";
    }
    out += formula_text::to_text(m, c.constraint) + ".\n";
  }
  return out;
}

} // namespace pground::report
