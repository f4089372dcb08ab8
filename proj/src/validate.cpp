#include "pground/validate.hpp"

#include <set>

#include "pground/errors.hpp"

namespace pground::frontend {

namespace {

bool is_database_builtin(const std::string& name) {
  return name == "assert" || name == "asserta" || name == "assertz" ||
         name == "retract" || name == "retractall";
}

} // namespace

std::vector<Diagnostic> validate(const ast::SourceProgram& p,
                                 const builtins::Table& table) {
  std::vector<Diagnostic> out;
  std::set<ast::Pred> defined;
  for (const auto& c : p.clauses) defined.insert(ast::pred_of(c.head));

  for (const auto& c : p.clauses) {
    ast::Pred head = ast::pred_of(c.head);
    if (table.contains(head)) {
      out.push_back({Diagnostic::Severity::Error,
                     "cannot redefine builtin " + head.key()});
    }
    for (const auto& g : c.body) {
      if (g.is_var()) {
        out.push_back({Diagnostic::Severity::Unsupported,
                       "unsupported construct: call through variable"});
        continue;
      }
      if (!g.is_compound()) {
        out.push_back({Diagnostic::Severity::Error, "body goal is not callable"});
        continue;
      }
      ast::Pred pr = ast::pred_of(g);
      if (is_database_builtin(pr.name)) {
        out.push_back({Diagnostic::Severity::Unsupported,
                       "unsupported construct: " + pr.name});
        continue;
      }
      if (!defined.count(pr) && !table.contains(pr)) {
        out.push_back({Diagnostic::Severity::Error,
                       "undefined predicate " + pr.key() + " called in body of " +
                           head.key()});
      }
    }
  }

  const ast::Pred& goal = p.config.goal;
  bool goal_defined = defined.count(goal) != 0;
  if (!goal_defined) {
    bool same_name_other_arity = false;
    for (const auto& d : defined)
      same_name_other_arity |= d.name == goal.name && d.arity != goal.arity;
    if (same_name_other_arity) {
      out.push_back({Diagnostic::Severity::Error,
                     "goal arity mismatch: main directive names " + goal.key()});
    } else {
      // Analysis still runs: call_goal is the seed, ans_goal stays FALSE.
      out.push_back({Diagnostic::Severity::Warning,
                     "goal predicate " + goal.key() + " has no clauses"});
    }
  }
  return out;
}

void check_validated(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Diagnostic::Severity::Unsupported)
      throw UnsupportedError(d.message);
  for (const auto& d : diags)
    if (d.severity == Diagnostic::Severity::Error)
      throw ValidateError(d.message);
}

} // namespace pground::frontend
