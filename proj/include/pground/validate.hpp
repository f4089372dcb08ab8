#pragma once

// Post-parse checks: undefined predicates, goal/definition arity agreement,
// constructs outside the supported subset (assert family etc.). Warnings do
// not stop the analysis; errors and unsupported constructs do.

#include <string>
#include <vector>

#include "pground/builtins.hpp"
#include "pground/term.hpp"

namespace pground::frontend {

struct Diagnostic {
  enum class Severity { Warning, Error, Unsupported };
  Severity severity;
  std::string message;
};

std::vector<Diagnostic> validate(const ast::SourceProgram& p,
                                 const builtins::Table& table);

// Raises ValidateError / UnsupportedError on the worst diagnostic present.
void check_validated(const std::vector<Diagnostic>& diags);

} // namespace pground::frontend
