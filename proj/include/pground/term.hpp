#pragma once

// Syntax tree for the analyzed logic programs. List syntax is desugared at
// parse time, so '.'/2 and '[]'/0 are ordinary compounds here; the printer
// re-sugars them.

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace pground::ast {

struct Term {
  enum class Kind { Var, Int, Compound };
  Kind kind = Kind::Compound;
  std::string name;      // variable name, or functor for Compound
  long long value = 0;   // Int only
  std::vector<Term> args;

  static Term var(std::string n) {
    Term t;
    t.kind = Kind::Var;
    t.name = std::move(n);
    return t;
  }
  static Term integer(long long v) {
    Term t;
    t.kind = Kind::Int;
    t.value = v;
    return t;
  }
  static Term compound(std::string f, std::vector<Term> as) {
    Term t;
    t.kind = Kind::Compound;
    t.name = std::move(f);
    t.args = std::move(as);
    return t;
  }
  static Term atom(std::string f) { return compound(std::move(f), {}); }

  bool is_var() const { return kind == Kind::Var; }
  bool is_compound() const { return kind == Kind::Compound; }

  friend bool operator==(const Term&, const Term&) = default;
  // Arbitrary total order so terms can key sets and maps.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
};

struct Pred {
  std::string name;
  int arity = 0;
  auto operator<=>(const Pred&) const = default;
  std::string key() const { return name + "/" + std::to_string(arity); }
};

Pred pred_of(const Term& atom);

struct Clause {
  Term head;
  std::vector<Term> body;
  friend bool operator==(const Clause&, const Clause&) = default;
};

struct Config {
  Pred goal;
  bool parametric = false; // directive absent means non-parametric
  bool parametric_directive_present = false;
};

struct SourceProgram {
  std::vector<Clause> clauses;
  Config config;
};

std::string to_string(const Term& t);
std::string to_string(const Clause& c);
std::string to_string(const SourceProgram& p);

// Structural equality of clauses modulo a bijective variable renaming;
// used by tests comparing transformed programs against expected shapes.
bool variant_clauses(const Clause& a, const Clause& b);

} // namespace pground::ast
