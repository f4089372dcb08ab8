#pragma once

// Flag handling and exit-code mapping for the analyze binary. Kept as a
// library function so tests can drive the full CLI in-process.
//
// Exit codes: 0 success, 1 parse/validation/usage error, 2 unsupported
// construct, 3 internal invariant violation.

#include <iosfwd>
#include <string>
#include <vector>

namespace pground::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pground::cli
