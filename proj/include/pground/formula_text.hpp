#pragma once

// Textual formula syntax shared by the CLI, the builtin table and reports:
//   variables by name (x1.., b1..), constants 0 1, operators ~ & | -> <->,
//   parentheses; whitespace insensitive. Precedence (tightest first):
//   ~, &, |, ->, <-> with -> and <-> right-associative.

#include <string>
#include <string_view>
#include <vector>

#include "pground/bdd.hpp"

namespace pground::formula_text {

// Variable names are resolved against the manager; unknown name -> ParseError.
bdd::NodeRef parse(bdd::Manager& m, std::string_view text);

// Formula as " & "-joined prime-implicate clauses, parseable by parse().
// TRUE prints as "1", FALSE as "0".
std::string to_text(bdd::Manager& m, bdd::NodeRef a);

// The same clauses as individual strings ("x1 | ~b1", ...), for reports.
std::vector<std::string> cnf_strings(bdd::Manager& m, bdd::NodeRef a);

std::string clause_text(const bdd::Manager& m, const bdd::Clause& c);

} // namespace pground::formula_text
