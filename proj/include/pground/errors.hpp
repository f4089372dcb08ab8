#pragma once

// Error taxonomy shared by all modules; the CLI maps these onto exit codes
// (parse/validation -> 1, unsupported construct -> 2, internal -> 3).

#include <stdexcept>
#include <string>

namespace pground {

struct ParseError : std::runtime_error {
  int line = 0, col = 0;
  ParseError(int ln, int cl, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(ln) + ":" +
                           std::to_string(cl) + ": " + msg),
        line(ln), col(cl) {}
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ValidateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

} // namespace pground
