#include "pground/formula_text.hpp"

#include <cctype>

#include "pground/errors.hpp"

namespace pground::formula_text {

namespace {

struct Parser {
  bdd::Manager& m;
  std::string_view s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  bool eat(std::string_view tok) {
    skip();
    if (s.substr(i).starts_with(tok)) {
      i += tok.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("formula: " + msg + " at offset " + std::to_string(i));
  }

  bdd::NodeRef parse_iff() {
    bdd::NodeRef a = parse_implies();
    if (eat("<->")) return m.apply(bdd::Op::Iff, a, parse_iff());
    return a;
  }

  bdd::NodeRef parse_implies() {
    bdd::NodeRef a = parse_or();
    if (eat("->")) return m.apply(bdd::Op::Implies, a, parse_implies());
    return a;
  }

  bdd::NodeRef parse_or() {
    bdd::NodeRef a = parse_and();
    while (true) {
      skip();
      // Don't swallow the '|' when it is not followed by more formula; there
      // is no such case in this grammar, so a bare eat is fine.
      if (eat("|")) a = m.apply(bdd::Op::Or, a, parse_and());
      else return a;
    }
  }

  bdd::NodeRef parse_and() {
    bdd::NodeRef a = parse_unary();
    while (eat("&")) a = m.apply(bdd::Op::And, a, parse_unary());
    return a;
  }

  bdd::NodeRef parse_unary() {
    if (eat("~")) return m.negate(parse_unary());
    skip();
    if (i >= s.size()) fail("unexpected end of formula");
    char c = s[i];
    if (c == '(') {
      ++i;
      bdd::NodeRef a = parse_iff();
      if (!eat(")")) fail("expected ')'");
      return a;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      std::string name(s.substr(i, j - i));
      i = j;
      auto v = m.var_by_name(name);
      if (!v) fail("unknown variable '" + name + "'");
      return m.mk_var(*v);
    }
    if (c == '0' || c == '1') {
      // Bare constant only; "01" etc. is rejected.
      if (i + 1 < s.size() && std::isalnum(static_cast<unsigned char>(s[i + 1])))
        fail("malformed constant");
      ++i;
      return c == '1' ? bdd::Manager::kTrue : bdd::Manager::kFalse;
    }
    fail("unexpected character");
  }
};

} // namespace

bdd::NodeRef parse(bdd::Manager& m, std::string_view text) {
  Parser p{m, text};
  bdd::NodeRef a = p.parse_iff();
  p.skip();
  if (p.i != text.size()) p.fail("trailing input");
  return a;
}

std::string clause_text(const bdd::Manager& m, const bdd::Clause& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += " | ";
    if (c[i].negated) out += '~';
    out += m.var(c[i].var).name;
  }
  return out;
}

std::vector<std::string> cnf_strings(bdd::Manager& m, bdd::NodeRef a) {
  std::vector<std::string> out;
  for (const auto& c : prime_implicate_cnf(m, a)) out.push_back(clause_text(m, c));
  return out;
}

std::string to_text(bdd::Manager& m, bdd::NodeRef a) {
  if (a == bdd::Manager::kTrue) return "1";
  if (a == bdd::Manager::kFalse) return "0";
  auto clauses = prime_implicate_cnf(m, a);
  std::string out;
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (i) out += " & ";
    bool paren = clauses.size() > 1 && clauses[i].size() > 1;
    if (paren) out += '(';
    out += clause_text(m, clauses[i]);
    if (paren) out += ')';
  }
  return out;
}

} // namespace pground::formula_text
