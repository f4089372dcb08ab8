#pragma once

// Result presentation: per-source-predicate call/ans formulas as text and as
// a versioned JSON document, plus the abstract-program listing behind
// --dump-abstract.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pground/domain.hpp"
#include "pground/pipeline.hpp"

namespace pground::report {

struct PredFormulas {
  ast::Pred source;
  std::string call_pretty, ans_pretty; // "0" when unreachable
  std::vector<std::string> call_cnf, ans_cnf;
  bool call_reachable = false, ans_reachable = false;
};

struct RunReport {
  std::string program; // file name or "<text>"
  std::string goal;    // "name/arity"
  std::string mode;    // "parametric" | "non-parametric"
  std::vector<std::string> params; // b1..bn (parametric only)
  std::optional<std::string> instantiated_at; // e.g. "b1=1,b2=0"
  std::vector<PredFormulas> predicates; // sorted by name/arity
  int atoms = 0; // head + body-call atoms across the abstract program
  int sccs = 0;
  int iterations = 0;
  std::size_t bdd_nodes = 0;
  std::int64_t wall_us = 0;
};

// When `at` is given the parametric result is instantiated before reporting.
RunReport build_report(const pipeline::Analysis& a, const std::string& program_name,
                       const std::optional<domain::ConElement>& at = std::nullopt,
                       const std::optional<std::string>& at_text = std::nullopt);

std::string to_text(const RunReport& r);
nlohmann::json to_json(const RunReport& r);

int count_atoms(const transform::AbstractProgram& p);

std::string dump_abstract(const pipeline::Analysis& a);

} // namespace pground::report
