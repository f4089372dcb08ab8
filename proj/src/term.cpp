#include "pground/term.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "pground/errors.hpp"

namespace pground::ast {

Pred pred_of(const Term& atom) {
  if (!atom.is_compound())
    throw InternalError("pred_of: not a predicate atom");
  return {atom.name, static_cast<int>(atom.args.size())};
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  switch (a.kind) {
    case Term::Kind::Var:
      return a.name <=> b.name;
    case Term::Kind::Int:
      return a.value <=> b.value;
    case Term::Kind::Compound:
      break;
  }
  if (auto c = a.name <=> b.name; c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
}

namespace {

bool atom_needs_quotes(const std::string& f) {
  if (f.empty()) return true;
  if (!(std::islower(static_cast<unsigned char>(f[0])))) return true;
  for (char c : f)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return true;
  return false;
}

void print_term(const Term& t, std::string& out) {
  switch (t.kind) {
    case Term::Kind::Var:
      out += t.name;
      return;
    case Term::Kind::Int:
      out += std::to_string(t.value);
      return;
    case Term::Kind::Compound:
      break;
  }
  if (t.name == "." && t.args.size() == 2) {
    // Re-sugar lists: [a,b|T] style.
    out += '[';
    const Term* cur = &t;
    bool first = true;
    while (cur->is_compound() && cur->name == "." && cur->args.size() == 2) {
      if (!first) out += ',';
      print_term(cur->args[0], out);
      first = false;
      cur = &cur->args[1];
    }
    if (!(cur->is_compound() && cur->name == "[]" && cur->args.empty())) {
      out += '|';
      print_term(*cur, out);
    }
    out += ']';
    return;
  }
  if (atom_needs_quotes(t.name)) {
    out += '\'';
    out += t.name;
    out += '\'';
  } else {
    out += t.name;
  }
  if (!t.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < t.args.size(); ++i) {
      if (i) out += ',';
      print_term(t.args[i], out);
    }
    out += ')';
  }
}

} // namespace

std::string to_string(const Term& t) {
  std::string out;
  print_term(t, out);
  return out;
}

std::string to_string(const Clause& c) {
  std::string out = to_string(c.head);
  if (!c.body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i) out += ", ";
      out += to_string(c.body[i]);
    }
  }
  out += '.';
  return out;
}

std::string to_string(const SourceProgram& p) {
  std::string out = ":- main(" + p.config.goal.name + "/" +
                    std::to_string(p.config.goal.arity) + ").\n";
  if (p.config.parametric_directive_present)
    out += std::string(":- parametric(") + (p.config.parametric ? "yes" : "no") + ").\n";
  for (const auto& c : p.clauses) {
    out += to_string(c);
    out += '\n';
  }
  return out;
}

namespace {

bool variant_terms(const Term& a, const Term& b,
                  std::map<std::string, std::string>& fwd,
                  std::map<std::string, std::string>& bwd) {
  if (a.kind != b.kind) return false;
  if (a.is_var()) {
    auto f = fwd.find(a.name);
    auto g = bwd.find(b.name);
    if (f == fwd.end() && g == bwd.end()) {
      fwd[a.name] = b.name;
      bwd[b.name] = a.name;
      return true;
    }
    return f != fwd.end() && g != bwd.end() && f->second == b.name &&
           g->second == a.name;
  }
  if (a.kind == Term::Kind::Int) return a.value == b.value;
  if (a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!variant_terms(a.args[i], b.args[i], fwd, bwd)) return false;
  return true;
}

} // namespace

bool variant_clauses(const Clause& a, const Clause& b) {
  if (a.body.size() != b.body.size()) return false;
  std::map<std::string, std::string> fwd, bwd;
  if (!variant_terms(a.head, b.head, fwd, bwd)) return false;
  for (std::size_t i = 0; i < a.body.size(); ++i)
    if (!variant_terms(a.body[i], b.body[i], fwd, bwd)) return false;
  return true;
}

} // namespace pground::ast
