#pragma once

// Recursive-descent reader for the supported Prolog subset: facts and Horn
// clauses, list sugar, %-and-/* */ comments, ":- main(Name/Arity)." and
// ":- parametric(yes|no)." directives, and the comparison builtins as the
// only infix operators. Cut, negation and body disjunction are rejected.

#include <string_view>

#include "pground/term.hpp"

namespace pground::frontend {

// Throws ParseError (syntax, missing/duplicate directives) and
// UnsupportedError (construct outside the subset).
ast::SourceProgram parse_program(std::string_view text);

} // namespace pground::frontend
