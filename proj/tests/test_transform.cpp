#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "pground/builtins.hpp"
#include "pground/errors.hpp"
#include "pground/formula_text.hpp"
#include "pground/parser.hpp"
#include "pground/space.hpp"
#include "pground/transform.hpp"

using namespace pground;
using transform::NormCall;
using transform::NormClause;
using transform::NormEq;

namespace {

const builtins::Table& table() {
  static builtins::Table t = builtins::Table::defaults();
  return t;
}

ast::SourceProgram magic_of(const std::string& text) {
  return transform::magic_transform(frontend::parse_program(text), table());
}

std::vector<std::string> clause_strings(const ast::SourceProgram& p) {
  std::vector<std::string> out;
  for (const auto& c : p.clauses) out.push_back(ast::to_string(c));
  return out;
}

std::vector<std::string> norm_strings(const ast::SourceProgram& magic) {
  std::vector<std::string> out;
  for (const auto& c : transform::normalize(magic))
    out.push_back(transform::to_string(c));
  return out;
}

const char* kReverse =
    ":- main(r/2).\n"
    "r([],[]).\n"
    "r([X1|X2],X3) :- r(X2,X4), a(X4,[X1],X3).\n"
    "a([],X,X).\n"
    "a([X1|X2],X3,[X1|X4]) :- a(X2,X3,X4).\n";

} // namespace

TEST_CASE("magic of a fact guards the answer with its own call") {
  auto m = magic_of(":- main(p/1).\np(a).\n");
  REQUIRE(m.clauses.size() == 1);
  CHECK(ast::to_string(m.clauses[0]) == "ans_p(a) :- call_p(a).");
  CHECK(m.config.goal == ast::Pred{"p", 1});
}

TEST_CASE("magic threads earlier answers into later calls") {
  auto m = magic_of(":- main(p/0).\np :- q, r.\nq.\nr.\n");
  CHECK(clause_strings(m) == std::vector<std::string>{
                                 "call_q :- call_p.",
                                 "call_r :- call_p, ans_q.",
                                 "ans_p :- call_p, ans_q, ans_r.",
                                 "ans_q :- call_q.",
                                 "ans_r :- call_r.",
                             });
}

TEST_CASE("builtins stay inline and get no call predicates") {
  auto m = magic_of(":- main(p/1).\np(X) :- X = a, q(X).\nq(b).\n");
  CHECK(clause_strings(m) == std::vector<std::string>{
                                 "call_q(X) :- call_p(X), '='(X,a).",
                                 "ans_p(X) :- call_p(X), '='(X,a), ans_q(X).",
                                 "ans_q(b) :- call_q(b).",
                             });
}

TEST_CASE("magic of the reverse program") {
  auto m = magic_of(kReverse);
  CHECK(clause_strings(m) ==
        std::vector<std::string>{
            "ans_r('[]','[]') :- call_r('[]','[]').",
            "call_r(X2,X4) :- call_r([X1|X2],X3).",
            "call_a(X4,[X1],X3) :- call_r([X1|X2],X3), ans_r(X2,X4).",
            "ans_r([X1|X2],X3) :- call_r([X1|X2],X3), ans_r(X2,X4), "
            "ans_a(X4,[X1],X3).",
            "ans_a('[]',X,X) :- call_a('[]',X,X).",
            "call_a(X2,X3,X4) :- call_a([X1|X2],X3,[X1|X4]).",
            "ans_a([X1|X2],X3,[X1|X4]) :- call_a([X1|X2],X3,[X1|X4]), "
            "ans_a(X2,X3,X4).",
        });
}

TEST_CASE("normalization flattens terms into numbered equations") {
  auto m = magic_of(kReverse);
  CHECK(norm_strings(m) ==
        std::vector<std::string>{
            "ans_r(x1,x2) :- call_r(x1,x2), x1 = '[]', x2 = '[]'.",
            "call_r(x4,x5) :- call_r(x1,x2), x1 = '.'(x3,x4).",
            "call_a(x5,x6,x2) :- call_r(x1,x2), x1 = '.'(x3,x4), "
            "ans_r(x4,x5), x6 = '.'(x3,x7), x7 = '[]'.",
            "ans_r(x1,x2) :- call_r(x1,x2), x1 = '.'(x3,x4), ans_r(x4,x5), "
            "ans_a(x5,x6,x2), x6 = '.'(x3,x7), x7 = '[]'.",
            "ans_a(x1,x2,x3) :- call_a(x1,x2,x3), x1 = '[]', x3 = x2.",
            "call_a(x5,x2,x6) :- call_a(x1,x2,x3), x1 = '.'(x4,x5), "
            "x3 = '.'(x4,x6).",
            "ans_a(x1,x2,x3) :- call_a(x1,x2,x3), x1 = '.'(x4,x5), "
            "x3 = '.'(x4,x6), ans_a(x5,x2,x6).",
        });

  auto norm = transform::normalize(m);
  CHECK(norm[0].head_args == std::vector<int>{1, 2});
  CHECK(norm[0].n_locals == 2);
  CHECK(norm[2].n_locals == 7);
  // the answer guard shares the head argument numbering exactly
  const auto& guard = std::get<NormCall>(norm[0].body[0]);
  CHECK(guard.pred == ast::Pred{"call_r", 2});
  CHECK(guard.args == norm[0].head_args);
}

TEST_CASE("normalization numbers builtin arguments too") {
  auto m = magic_of(":- main(p/1).\np(X) :- X = a, q(X).\nq(b).\n");
  CHECK(norm_strings(m) ==
        std::vector<std::string>{
            "call_q(x1) :- call_p(x1), =(x1,x2), x2 = 'a'.",
            "ans_p(x1) :- call_p(x1), =(x1,x2), x2 = 'a', ans_q(x1).",
            "ans_q(x1) :- call_q(x1), x1 = 'b'.",
        });
  auto norm = transform::normalize(m);
  CHECK(norm[2].head_args == std::vector<int>{1});
  const auto& eq = std::get<NormEq>(norm[2].body[1]);
  CHECK(eq.lhs == 1);
  CHECK(eq.functor == "b");
  CHECK(eq.rhs_args.empty());
}

TEST_CASE("integer constants normalize as ground constructors") {
  auto m = magic_of(":- main(p/1).\np(7).\n");
  auto norm = transform::normalize(m);
  const auto& eq = std::get<NormEq>(norm[0].body[1]);
  CHECK(eq.rhs_is_int);
  CHECK(eq.int_value == 7);
}

TEST_CASE("clause dependency graph of the reverse program") {
  auto m = magic_of(kReverse);
  auto g = transform::build_call_graph(m, table());
  REQUIRE(g.n == 7);
  CHECK(g.succ[0] == std::vector<int>{1});
  CHECK(g.succ[1] == std::vector<int>{1});
  CHECK(g.succ[2] == std::vector<int>{0, 1, 3});
  CHECK(g.succ[3] == std::vector<int>{0, 1, 3, 4, 6});
  CHECK(g.succ[4] == std::vector<int>{2, 5});
  CHECK(g.succ[5] == std::vector<int>{2, 5});
  CHECK(g.succ[6] == std::vector<int>{2, 4, 5, 6});

  auto order = transform::scc_order(g);
  REQUIRE(order.components.size() == 3);
  CHECK(order.components[0].clauses == std::vector<int>{1});
  CHECK(order.components[0].cyclic);
  CHECK(order.components[1].clauses == std::vector<int>{0});
  CHECK_FALSE(order.components[1].cyclic);
  CHECK(order.components[2].clauses == std::vector<int>{2, 3, 4, 5, 6});
  CHECK(order.components[2].cyclic);
}

TEST_CASE("scc order is a valid bottom-up schedule") {
  // every dependency of a clause sits in the same or an earlier component
  for (const char* text :
       {kReverse, ":- main(p/0).\np :- q, r.\nq.\nr.\n",
        ":- main(p/0).\np :- q.\nq :- p.\n",
        ":- main(p/1).\np(X) :- X = a, q(X).\nq(b).\n"}) {
    auto m = magic_of(text);
    auto g = transform::build_call_graph(m, table());
    auto order = transform::scc_order(g);
    std::vector<int> comp_of(g.n, -1);
    int covered = 0;
    for (size_t c = 0; c < order.components.size(); ++c)
      for (int i : order.components[c].clauses) {
        CHECK(comp_of[i] == -1);
        comp_of[i] = static_cast<int>(c);
        ++covered;
      }
    CHECK(covered == g.n);
    for (int i = 0; i < g.n; ++i)
      for (int j : g.succ[i]) {
        CHECK(comp_of[j] <= comp_of[i]);
        if (i == j) CHECK(order.components[comp_of[i]].cyclic);
      }
  }
}

TEST_CASE("mutual recursion lands in one cyclic component") {
  auto m = magic_of(":- main(p/0).\np :- q.\nq :- p.\n");
  auto g = transform::build_call_graph(m, table());
  auto order = transform::scc_order(g);
  bool found = false;
  for (const auto& c : order.components)
    if (c.clauses.size() > 1) {
      CHECK(c.cyclic);
      found = true;
    }
  CHECK(found);
}

TEST_CASE("required_locals covers clause bodies, calls and the goal") {
  auto rev = transform::normalize(magic_of(kReverse));
  CHECK(transform::required_locals(rev, {"r", 2}) == 7);
  auto tiny = transform::normalize(magic_of(":- main(p/0).\np.\n"));
  CHECK(transform::required_locals(tiny, {"p", 0}) == 0);
  CHECK(transform::required_locals(tiny, {"p", 5}) == 5);
}

TEST_CASE("abstract compilation of a single fact") {
  auto m = magic_of(":- main(p/1).\np(a).\n");
  auto norm = transform::normalize(m);
  auto sp = space::make_space(transform::required_locals(norm, {"p", 1}), 1);

  SUBCASE("parametric: seed carries the input encoding") {
    auto a = transform::abstract_compile(
        norm, table(), {"p", 1}, {.parametric = true, .input_formula = ""}, *sp);
    REQUIRE(a.clauses.size() == 2);
    CHECK(a.seed_index == 1);
    CHECK(a.parametric);
    REQUIRE(a.param_space.params.size() == 1);
    CHECK(a.param_space.goal_args == std::vector<bdd::VarId>{sp->x(1)});
    const auto& seed = a.clauses[1];
    CHECK(seed.head == ast::Pred{"call_p", 1});
    CHECK(seed.constraint == formula_text::parse(sp->mgr, "b1 -> x1"));
    CHECK(seed.body_calls.empty());

    const auto& fact = a.clauses[0];
    CHECK(fact.head == ast::Pred{"ans_p", 1});
    CHECK(fact.constraint == formula_text::parse(sp->mgr, "x1"));
    REQUIRE(fact.body_calls.size() == 1);
    CHECK(fact.body_calls[0].first == ast::Pred{"call_p", 1});

    CHECK(a.predicates == std::vector<ast::Pred>{{"ans_p", 1}, {"call_p", 1}});
    CHECK(a.source_preds == std::vector<ast::Pred>{{"p", 1}});
  }
  SUBCASE("non-parametric: optional positive input over goal args") {
    auto a = transform::abstract_compile(norm, table(), {"p", 1}, {}, *sp);
    CHECK(a.clauses[1].constraint == bdd::Manager::kTrue);
    CHECK(a.param_space.params.empty());

    auto b = transform::abstract_compile(
        norm, table(), {"p", 1}, {.input_formula = "x1"}, *sp);
    CHECK(b.clauses[1].constraint == formula_text::parse(sp->mgr, "x1"));

    CHECK_THROWS_AS(transform::abstract_compile(
                        norm, table(), {"p", 1}, {.input_formula = "~x1"}, *sp),
                    UsageError);
    // x2 exists in a roomier space but is not a goal argument of p/1
    auto wide = space::make_space(3, 1);
    CHECK_THROWS_AS(
        transform::abstract_compile(norm, table(), {"p", 1},
                                    {.input_formula = "x2"}, *wide),
        UsageError);
    CHECK_THROWS_AS(transform::abstract_compile(
                        norm, table(), {"p", 1}, {.input_formula = "b1"}, *sp),
                    UsageError);
  }
}

TEST_CASE("equations and builtins compile to the expected constraints") {
  auto m = magic_of(":- main(p/1).\np(X) :- X = a, q(X).\nq(b).\n");
  auto norm = transform::normalize(m);
  auto sp = space::make_space(transform::required_locals(norm, {"p", 1}), 1);
  auto a = transform::abstract_compile(norm, table(), {"p", 1}, {}, *sp);
  auto f = [&](const char* s) { return formula_text::parse(sp->mgr, s); };
  // call_q(x1) :- call_p(x1), =(x1,x2), x2 = 'a'  =>  (x1<->x2) & x2
  CHECK(a.clauses[0].constraint == f("(x1 <-> x2) & x2"));
  // ans_q(x1) :- call_q(x1), x1 = 'b'  =>  x1
  CHECK(a.clauses[2].constraint == f("x1"));
  REQUIRE(a.clauses[0].body_calls.size() == 1);
  CHECK(a.clauses[0].body_calls[0].first == ast::Pred{"call_p", 1});
}

TEST_CASE("list equations tie the constructed cell to its pieces") {
  auto m = magic_of(kReverse);
  auto norm = transform::normalize(m);
  auto sp = space::make_space(transform::required_locals(norm, {"r", 2}), 2);
  auto a = transform::abstract_compile(
      norm, table(), {"r", 2}, {.parametric = true, .input_formula = ""}, *sp);
  auto f = [&](const char* s) { return formula_text::parse(sp->mgr, s); };
  // ans_r(x1,x2) :- call_r(x1,x2), x1 = '[]', x2 = '[]'
  CHECK(a.clauses[0].constraint == f("x1 & x2"));
  // call_r(x4,x5) :- call_r(x1,x2), x1 = '.'(x3,x4)
  CHECK(a.clauses[1].constraint == f("x1 <-> x3 & x4"));
  // ans_a(x1,x2,x3) :- call_a(x1,x2,x3), x1 = '[]', x3 = x2
  CHECK(a.clauses[4].constraint == f("x1 & (x3 <-> x2)"));
  CHECK(a.seed_index == 7);
  CHECK(a.clauses[7].constraint == f("(b1 -> x1) & (b2 -> x2)"));
  for (const auto& c : a.clauses)
    CHECK(sp->mgr.is_positive(c.constraint)); // Pos stays closed
}

TEST_CASE("with_seed prefixes the seed component") {
  auto m = magic_of(kReverse);
  auto g = transform::build_call_graph(m, table());
  auto order = transform::with_seed(transform::scc_order(g), 7);
  REQUIRE(order.components.size() == 4);
  CHECK(order.components[0].clauses == std::vector<int>{7});
  CHECK_FALSE(order.components[0].cyclic);
  CHECK(order.components[1].clauses == std::vector<int>{1});
  CHECK(order.components[3].clauses == std::vector<int>{2, 3, 4, 5, 6});
}

TEST_CASE("compiling into an undersized space is rejected") {
  auto norm = transform::normalize(magic_of(kReverse));
  auto sp = space::make_space(2, 2);
  CHECK_THROWS_AS(
      transform::abstract_compile(norm, table(), {"r", 2}, {}, *sp),
      InternalError);
}
