#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "pground/bdd.hpp"
#include "pground/errors.hpp"
#include "tt_oracle.hpp"

using namespace pground;
using bdd::Manager;
using bdd::NodeRef;
using bdd::Op;
using bdd::VarId;

namespace {

// n plain vars x1..xn (VarId 0..n-1) plus optional scratch for renames.
Manager make_mgr(int n, int scratch = 0) {
  std::vector<bdd::VarInfo> order;
  for (int i = 1; i <= n; ++i)
    order.push_back({"x" + std::to_string(i), bdd::VarKind::Plain});
  for (int i = 1; i <= scratch; ++i)
    order.push_back({"_s" + std::to_string(i), bdd::VarKind::Scratch});
  return Manager(std::move(order));
}

} // namespace

TEST_CASE("constants and apply identities") {
  Manager m = make_mgr(2);
  NodeRef x = m.mk_var(0), y = m.mk_var(1);
  CHECK(m.apply(Op::And, x, Manager::kTrue) == x);
  CHECK(m.apply(Op::And, x, Manager::kFalse) == Manager::kFalse);
  CHECK(m.apply(Op::Or, x, Manager::kFalse) == x);
  CHECK(m.apply(Op::Or, x, Manager::kTrue) == Manager::kTrue);
  CHECK(m.apply(Op::And, x, x) == x);
  CHECK(m.apply(Op::Iff, x, x) == Manager::kTrue);
  CHECK(m.apply(Op::Implies, x, y) == m.apply(Op::Or, m.negate(x), y));
  CHECK(m.mk_var(0) == x); // unique table
}

TEST_CASE("iff builds the textbook two-branch node") {
  Manager m = make_mgr(2);
  NodeRef x = m.mk_var(0), y = m.mk_var(1);
  NodeRef f = m.apply(Op::Iff, x, y);
  CHECK(m.node_var(f) == 0);
  CHECK(m.node_high(f) == y);
  CHECK(m.node_low(f) == m.negate(y));
}

TEST_CASE("exists") {
  Manager m = make_mgr(2);
  NodeRef x = m.mk_var(0), y = m.mk_var(1);
  VarId vx = 0;
  CHECK(m.exists(std::vector<VarId>{vx}, m.apply(Op::And, x, y)) == y);
  CHECK(m.exists(std::vector<VarId>{vx}, m.apply(Op::Iff, x, y)) == Manager::kTrue);
  NodeRef f = m.apply(Op::Implies, x, y);
  CHECK(m.exists(std::vector<VarId>{}, f) == f);
  CHECK(m.exists(std::vector<VarId>{vx, vx}, f) == Manager::kTrue); // dups ok
}

TEST_CASE("rename") {
  Manager m = make_mgr(3, 3);
  NodeRef x1 = m.mk_var(0), x2 = m.mk_var(1), x3 = m.mk_var(2);

  SUBCASE("swap needs simultaneous semantics") {
    NodeRef f = m.apply(Op::Implies, x1, x2);
    std::vector<VarId> from{0, 1}, to{1, 0};
    CHECK(m.rename(from, to, f) == m.apply(Op::Implies, x2, x1));
  }
  SUBCASE("constants are fixed points") {
    std::vector<VarId> from{0}, to{1};
    CHECK(m.rename(from, to, Manager::kTrue) == Manager::kTrue);
    CHECK(m.rename(from, to, Manager::kFalse) == Manager::kFalse);
  }
  SUBCASE("disjoint rename") {
    NodeRef f = m.apply(Op::And, x1, x3);
    std::vector<VarId> from{0}, to{1};
    CHECK(m.rename(from, to, f) == m.apply(Op::And, x2, x3));
  }
  SUBCASE("repeated target merges arguments") {
    NodeRef f = m.apply(Op::And, x1, x2);
    std::vector<VarId> from{0, 1}, to{2, 2};
    CHECK(m.rename(from, to, f) == x3);
  }
  SUBCASE("round trip through fresh variables is identity") {
    NodeRef f = m.apply(Op::Iff, x1, m.apply(Op::Or, x2, x3));
    std::vector<VarId> from{0, 1}, fresh{3, 4}; // scratch slots as fresh
    NodeRef g = m.rename(from, fresh, f);
    CHECK(m.rename(fresh, from, g) == f);
  }
}

TEST_CASE("restrict") {
  Manager m = make_mgr(2);
  NodeRef b = m.mk_var(0), x = m.mk_var(1);
  NodeRef imp = m.apply(Op::Implies, b, x);
  using Asg = std::vector<std::pair<VarId, bool>>;
  CHECK(m.restrict(Asg{{0, true}}, imp) == x);
  CHECK(m.restrict(Asg{{0, false}}, imp) == Manager::kTrue);
  CHECK(m.restrict(Asg{{0, true}, {1, false}}, m.apply(Op::Iff, b, x)) ==
        Manager::kFalse);
  CHECK(m.restrict(Asg{{0, true}, {0, true}}, b) == Manager::kTrue);
  CHECK_THROWS_AS(m.restrict(Asg{{0, true}, {0, false}}, b), InternalError);
}

TEST_CASE("entails / equiv / is_positive") {
  Manager m = make_mgr(2);
  NodeRef a = m.mk_var(0), u = m.mk_var(1);
  CHECK(m.entails(m.apply(Op::And, a, u), a));
  CHECK_FALSE(m.entails(a, m.apply(Op::And, a, u)));
  CHECK(Manager::equiv(m.apply(Op::Implies, a, u),
                       m.apply(Op::Or, m.negate(a), u)));
  CHECK(m.is_positive(m.apply(Op::Or, a, u)));
  CHECK(m.is_positive(Manager::kTrue));
  CHECK_FALSE(m.is_positive(m.negate(a)));
  CHECK_FALSE(m.is_positive(Manager::kFalse));
}

TEST_CASE("prime implicate CNF") {
  Manager m = make_mgr(3);
  NodeRef x1 = m.mk_var(0), x2 = m.mk_var(1);

  SUBCASE("conjunction splits into unit clauses") {
    auto cnf = bdd::prime_implicate_cnf(m, m.apply(Op::And, x1, x2));
    REQUIRE(cnf.size() == 2);
    CHECK(cnf[0] == bdd::Clause{{0, false}});
    CHECK(cnf[1] == bdd::Clause{{1, false}});
  }
  SUBCASE("iff gives the two implications") {
    auto cnf = bdd::prime_implicate_cnf(m, m.apply(Op::Iff, x1, x2));
    REQUIRE(cnf.size() == 2);
    CHECK(cnf[0] == bdd::Clause{{0, true}, {1, false}});  // ~x1 | x2
    CHECK(cnf[1] == bdd::Clause{{0, false}, {1, true}});  // x1 | ~x2
  }
  SUBCASE("constants") {
    CHECK(bdd::prime_implicate_cnf(m, Manager::kTrue).empty());
    auto cnf = bdd::prime_implicate_cnf(m, Manager::kFalse);
    REQUIRE(cnf.size() == 1);
    CHECK(cnf[0].empty());
  }
  SUBCASE("equivalent to the input and deterministic") {
    std::mt19937 rng(7);
    for (int round = 0; round < 50; ++round) {
      tt::Table t = rng() & tt::live_mask(3);
      NodeRef f = tt::to_bdd(m, t, 3);
      auto cnf = bdd::prime_implicate_cnf(m, f);
      CHECK(cnf == bdd::prime_implicate_cnf(m, f));
      NodeRef back = Manager::kTrue;
      for (const auto& cl : cnf) {
        NodeRef c = Manager::kFalse;
        for (auto [v, neg] : cl) {
          NodeRef lit = neg ? m.negate(m.mk_var(v)) : m.mk_var(v);
          c = m.apply(Op::Or, c, lit);
        }
        back = m.apply(Op::And, back, c);
      }
      CHECK(back == f);
    }
  }
}

TEST_CASE("canonicity: equiv agrees with truth tables on random pairs") {
  Manager m = make_mgr(6);
  std::mt19937_64 rng(11);
  for (int round = 0; round < 1000; ++round) {
    tt::Table ta = rng() & tt::live_mask(6);
    tt::Table tb = rng() & tt::live_mask(6);
    if (round % 5 == 0) tb = ta; // force equal pairs too
    NodeRef a = tt::to_bdd(m, ta, 6);
    NodeRef b = tt::to_bdd(m, tb, 6);
    CHECK(Manager::equiv(a, b) == (ta == tb));
  }
}

TEST_CASE("apply agrees with truth tables: all 2-var pairs, every op") {
  Manager m = make_mgr(2);
  for (unsigned ta = 0; ta < 16; ++ta)
    for (unsigned tb = 0; tb < 16; ++tb) {
      NodeRef a = tt::to_bdd(m, ta, 2), b = tt::to_bdd(m, tb, 2);
      for (Op op : {Op::And, Op::Or, Op::Iff, Op::Implies}) {
        NodeRef r = m.apply(op, a, b);
        CHECK(tt::from_bdd(m, r, 2) == tt::apply(op, ta, tb, 2));
      }
    }
}

TEST_CASE("unary ops agree with truth tables: all 3-var functions") {
  Manager m = make_mgr(4, 4);
  for (unsigned t = 0; t < 256; ++t) {
    NodeRef f = tt::to_bdd(m, t, 3);
    CHECK(tt::from_bdd(m, m.negate(f), 3) == tt::negate(t, 3));

    for (unsigned sub = 0; sub < 8; ++sub) {
      std::vector<VarId> set;
      tt::Table want = t;
      for (int i = 0; i < 3; ++i)
        if (sub >> i & 1) {
          set.push_back(i);
          want = tt::exists1(want, i, 3);
        }
      CHECK(tt::from_bdd(m, m.exists(set, f), 3) == want);
    }

    // every partial assignment: var i set to 0, 1 or untouched
    for (int code = 0; code < 27; ++code) {
      std::vector<std::pair<VarId, bool>> asg;
      tt::Table want = t;
      int c = code;
      for (int i = 0; i < 3; ++i, c /= 3) {
        if (c % 3 == 0) continue;
        bool val = c % 3 == 2;
        asg.emplace_back(i, val);
        want = tt::restrict1(want, i, val, 3);
      }
      CHECK(tt::from_bdd(m, m.restrict(asg, f), 3) == want);
    }

    // renames: to a fresh var, a rotation, and a swap
    tt::Table t4 = t | (t << 8); // lift to 4 vars (independent of the new one)
    CHECK(tt::from_bdd(m, m.rename(std::vector<VarId>{0}, std::vector<VarId>{3}, f), 4) ==
          tt::rename(t4, {{0, 3}}, 4));
    CHECK(tt::from_bdd(m, m.rename(std::vector<VarId>{0, 1, 2}, std::vector<VarId>{1, 2, 0}, f), 3) ==
          tt::rename(t, {{0, 1}, {1, 2}, {2, 0}}, 3));
    CHECK(tt::from_bdd(m, m.rename(std::vector<VarId>{0, 2}, std::vector<VarId>{2, 0}, f), 3) ==
          tt::rename(t, {{0, 2}, {2, 0}}, 3));
  }
}

TEST_CASE("monotone formulas: exists equals cofactor at true") {
  // f monotone => f[v:=0] entails f[v:=1], so projection is the true cofactor.
  Manager m = make_mgr(4);
  std::mt19937_64 rng(23);
  for (int tried = 0; tried < 200; ++tried) {
    tt::Table mono = rng() & tt::live_mask(4);
    for (int i = 0; i < 4; ++i) // upward closure: flipping any var to 1 keeps truth
      mono |= ((mono & ~tt::var(i, 4)) << (1 << i)) & tt::live_mask(4);
    NodeRef f = tt::to_bdd(m, mono, 4);
    CHECK(m.is_positive(f) == (mono != 0));
    for (VarId v = 0; v < 4; ++v) {
      CHECK(m.exists(std::vector<VarId>{v}, f) ==
            m.restrict(std::vector<std::pair<VarId, bool>>{{v, true}}, f));
    }
  }
}

TEST_CASE("support and node counting") {
  Manager m = make_mgr(3);
  NodeRef f = m.apply(Op::And, m.mk_var(0), m.mk_var(2));
  CHECK(m.support(f) == std::vector<VarId>{0, 2});
  CHECK(m.support(Manager::kTrue).empty());
  CHECK(m.count_nodes(f) == 4); // two decision nodes + both terminals
}

TEST_CASE("copy_by_name rebuilds across differently ordered managers") {
  Manager a = make_mgr(3);
  std::vector<bdd::VarInfo> rev{{"x3", bdd::VarKind::Plain},
                                {"x1", bdd::VarKind::Plain},
                                {"x2", bdd::VarKind::Plain},
                                {"y9", bdd::VarKind::Plain}};
  Manager b{std::move(rev)};
  std::mt19937_64 rng(31);
  for (int round = 0; round < 100; ++round) {
    tt::Table t = rng() & tt::live_mask(3);
    NodeRef f = tt::to_bdd(a, t, 3);
    NodeRef g = bdd::copy_by_name(a, f, b);
    // compare by evaluating under matching named assignments
    for (unsigned asg = 0; asg < 8; ++asg) {
      std::vector<bool> ea(3), eb(4);
      for (int i = 0; i < 3; ++i) ea[i] = asg >> i & 1;
      eb[*b.var_by_name("x1")] = ea[0];
      eb[*b.var_by_name("x2")] = ea[1];
      eb[*b.var_by_name("x3")] = ea[2];
      CHECK(a.eval(f, ea) == b.eval(g, eb));
    }
  }
}
