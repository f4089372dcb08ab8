#pragma once

// Success patterns for builtins: which groundness relation holds between the
// arguments after a builtin call succeeds. Patterns are stored as formula
// text over x1..xn and compiled against a manager on demand.
//
// Table file format, one builtin per line (blank lines and # comments ok):
//   name/arity: pattern
// e.g. "=/2: x1 <-> x2".

#include <map>
#include <string>
#include <string_view>

#include "pground/bdd.hpp"
#include "pground/term.hpp"

namespace pground::builtins {

class Table {
public:
  // =/2 unifies (x1<->x2); comparisons and is/2 require ground operands and
  // succeed only then (x1 & x2).
  static Table defaults();

  void set(const ast::Pred& p, std::string pattern);
  bool contains(const ast::Pred& p) const;

  // Compiles the pattern; argument i maps to args[i]. Throws UnsupportedError
  // for unknown builtins ("no success pattern").
  bdd::NodeRef pattern(const ast::Pred& p, bdd::Manager& m,
                       const std::vector<bdd::VarId>& args) const;

  const std::map<ast::Pred, std::string>& entries() const { return entries_; }

private:
  std::map<ast::Pred, std::string> entries_;
};

// Parses the table file format on top of the defaults (entries override).
Table load_table(std::string_view text);

} // namespace pground::builtins
