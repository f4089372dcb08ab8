#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "pground/bdd.hpp"
#include "pground/errors.hpp"
#include "pground/formula_text.hpp"
#include "tt_oracle.hpp"

using namespace pground;
using bdd::Manager;
using bdd::NodeRef;
using bdd::Op;

namespace {

Manager make_mgr() {
  std::vector<bdd::VarInfo> order;
  for (int i = 1; i <= 4; ++i)
    order.push_back({"x" + std::to_string(i), bdd::VarKind::Plain});
  order.push_back({"b1", bdd::VarKind::Param});
  return Manager(std::move(order));
}

} // namespace

TEST_CASE("parse: constants, atoms, whitespace") {
  Manager m = make_mgr();
  CHECK(formula_text::parse(m, "1") == Manager::kTrue);
  CHECK(formula_text::parse(m, "0") == Manager::kFalse);
  CHECK(formula_text::parse(m, "x1") == m.mk_var(0));
  CHECK(formula_text::parse(m, "b1") == m.mk_var(4));
  CHECK(formula_text::parse(m, "  x2\t& x3 ") ==
        m.apply(Op::And, m.mk_var(1), m.mk_var(2)));
}

TEST_CASE("parse: precedence and associativity") {
  Manager m = make_mgr();
  auto p = [&](const char* s) { return formula_text::parse(m, s); };
  CHECK(p("~x1 & x2") == p("(~x1) & x2"));
  CHECK(p("x1 & x2 | x3") == p("(x1 & x2) | x3"));
  CHECK(p("x1 | x2 & x3") == p("x1 | (x2 & x3)"));
  CHECK(p("x1 | x2 -> x3") == p("(x1 | x2) -> x3"));
  CHECK(p("x1 -> x2 <-> x3") == p("(x1 -> x2) <-> x3"));
  CHECK(p("x1 -> x2 -> x3") == p("x1 -> (x2 -> x3)"));
  CHECK(p("x1 <-> x2 <-> x3") == p("x1 <-> (x2 <-> x3)"));
  CHECK(p("~~x1") == p("x1"));
  CHECK(p("~(x1 & x2)") == p("~x1 | ~x2"));
  CHECK(p("0 -> x1") == Manager::kTrue);
  CHECK(p("x1 & 1") == p("x1"));
  CHECK(p("~x1 <-> x2") == p("(~x1) <-> x2"));
}

TEST_CASE("parse: rejects malformed input") {
  Manager m = make_mgr();
  CHECK_THROWS_AS(formula_text::parse(m, "y7"), ParseError);
  CHECK_THROWS_AS(formula_text::parse(m, "x1 &"), ParseError);
  CHECK_THROWS_AS(formula_text::parse(m, "(x1"), ParseError);
  CHECK_THROWS_AS(formula_text::parse(m, "x1 x2"), ParseError);
  CHECK_THROWS_AS(formula_text::parse(m, ""), ParseError);
  CHECK_THROWS_AS(formula_text::parse(m, "&"), ParseError);
  CHECK_THROWS_AS(formula_text::parse(m, "x1 -> -> x2"), ParseError);
  CHECK_THROWS_AS(formula_text::parse(m, "x1 <- x2"), ParseError);
}

TEST_CASE("to_text golden forms") {
  Manager m = make_mgr();
  auto p = [&](const char* s) { return formula_text::parse(m, s); };
  CHECK(formula_text::to_text(m, Manager::kTrue) == "1");
  CHECK(formula_text::to_text(m, Manager::kFalse) == "0");
  CHECK(formula_text::to_text(m, p("x1")) == "x1");
  CHECK(formula_text::to_text(m, p("~x1")) == "~x1");
  CHECK(formula_text::to_text(m, p("x1 & x2")) == "x1 & x2");
  CHECK(formula_text::to_text(m, p("x1 <-> x2")) == "(~x1 | x2) & (x1 | ~x2)");
  CHECK(formula_text::to_text(m, p("b1 -> x1 & x2")) ==
        "(x1 | ~b1) & (x2 | ~b1)");
  CHECK(formula_text::to_text(m, p("x1 | x2 | x3")) == "x1 | x2 | x3");
}

TEST_CASE("cnf_strings and clause_text") {
  Manager m = make_mgr();
  auto p = [&](const char* s) { return formula_text::parse(m, s); };
  CHECK(formula_text::cnf_strings(m, p("x1 & x2")) ==
        std::vector<std::string>{"x1", "x2"});
  CHECK(formula_text::cnf_strings(m, p("x1 <-> x2")) ==
        std::vector<std::string>{"~x1 | x2", "x1 | ~x2"});
  CHECK(formula_text::cnf_strings(m, Manager::kTrue).empty());
  bdd::Clause cl{{0, true}, {2, false}};
  CHECK(formula_text::clause_text(m, cl) == "~x1 | x3");
}

TEST_CASE("round trip: parse(to_text(f)) == f for random functions") {
  Manager m = make_mgr();
  std::mt19937_64 rng(41);
  for (int round = 0; round < 300; ++round) {
    tt::Table t = rng() & tt::live_mask(4);
    NodeRef f = tt::to_bdd(m, t, 4);
    CHECK(formula_text::parse(m, formula_text::to_text(m, f)) == f);
  }
}
