#include <gtest/gtest.h>

#include "pwlqe/errors.hpp"
#include "pwlqe/normalform.hpp"
#include "support.hpp"

using namespace pwlqe;
using namespace pwlqe::testing;

TEST(Partitioning, RunningExample) {
  Body b = B("[y1 >= z -> (x - 2 < y1 && -x >= y3 && x >= y2)] * (2*x + z)");
  Body p = make_partitioning(b);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0].value, E("2*x + z"));
  EXPECT_EQ(p[1].value, ExtLinExpr(0));
  EXPECT_TRUE(is_partitioning(p));
}

TEST(Partitioning, SmallCases) {
  Body five = make_partitioning(B("[true] * 5"));
  ASSERT_EQ(five.size(), 1u);
  EXPECT_EQ(five[0].value, ExtLinExpr(5));

  Body inf = make_partitioning(B("[x >= 0] * oo + [x < 0] * (-oo)"));
  ASSERT_EQ(inf.size(), 2u);
  EXPECT_TRUE(inf[0].value.is_pos_inf());
  EXPECT_TRUE(inf[1].value.is_neg_inf());

  EXPECT_FALSE(is_partitioning(B("[x >= 0] * 1 + [x >= 1] * 2")));
  EXPECT_FALSE(is_partitioning(B("[x > 0] * 1")));
  EXPECT_TRUE(is_partitioning(B("[x > 0] * 1 + [x <= 0] * 2")));
}

TEST(Partitioning, IllFormedSumThrows) {
  EXPECT_THROW(make_partitioning(B("[x > 0] * oo + [x > -1] * (-oo)")), UndefinedSum);
}

// make_partitioning keeps the meaning of random well-formed bodies.
TEST(Partitioning, PreservesSemantics) {
  RandomParams p;
  p.quantifiers = 0;
  p.summands = 3;
  p.atoms_per_guard = 3;
  p.infinity_prob = 0.2;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Body b = random_quantity(p, seed).body;
    Body q = make_partitioning(b);
    ASSERT_TRUE(is_partitioning(q));
    Rng rng(seed);
    for (int k = 0; k < 30; ++k) {
      Valuation s = random_valuation({"x", "y", "z"}, rng);
      ASSERT_EQ(eval_quantity(s, b), eval_quantity(s, q)) << print_body(b);
    }
  }
}

TEST(WellFormed, Checks) {
  auto bad = check_well_formed(B("[x > 0] * oo + [x > -1] * (-oo)"));
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->first, 0u);
  EXPECT_EQ(bad->second, 1u);
  EXPECT_FALSE(check_well_formed(B("[x > 0] * oo + [x <= 0] * (-oo)")));
  EXPECT_FALSE(check_well_formed(B("[x > 0] * x + [x > -1] * 3")));
  EXPECT_FALSE(check_well_formed(B("[x > 0] * oo + [x > -1] * oo")));
}

TEST(Gnf, RunningExample) {
  Quantity g = to_gnf(Q("sup x : [y1 >= z -> (x - 2 < y1 && -x >= y3 && x >= y2)] * (2*x + z)"), "x");
  Quantity want = Q(
      "sup x : [y1 < z || (x < y1 + 2 && x <= -y3 && x >= y2)] * (2*x + z)"
      " + [(y1 >= z && x >= y1 + 2) || (y1 >= z && x > -y3) || (y1 >= z && x < y2)] * 0");
  EXPECT_EQ(g, want) << print_quantity(g);
}

TEST(Gnf, IsolatesByDivision) {
  Quantity g = to_gnf(Q("sup x : [2*x < 4] * 1 + [2*x >= 4] * 0"), "x");
  EXPECT_EQ(g, Q("sup x : [x < 2] * 1 + [x >= 2] * 0"));
}

TEST(Gnf, Idempotent) {
  Quantity once = to_gnf(Q("sup x : [x + y > 1 && x < 3] * x + [x + y <= 1 || x >= 3] * y"), "x");
  EXPECT_EQ(to_gnf(once, "x"), once);
}

// GNF output is partitioning, DNF-shaped with isolated atoms, and equivalent.
TEST(Gnf, ShapeAndMeaning) {
  RandomParams p;
  p.quantifiers = 1;
  p.summands = 3;
  p.atoms_per_guard = 3;
  p.infinity_prob = 0.1;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Quantity q = random_quantity(p, seed);
    Body g = to_gnf_body(q.body, "x");
    ASSERT_TRUE(is_partitioning(g));
    for (const auto& t : g)
      for (const auto& d : dnf_disjuncts(t.guard))
        for (const auto& a : d) ASSERT_TRUE(is_isolated(a, "x")) << to_string(a);
    Rng rng(seed);
    for (int k = 0; k < 20; ++k) {
      Valuation s = random_valuation({"x", "y", "z"}, rng);
      ASSERT_EQ(eval_quantity(s, q.body), eval_quantity(s, g));
    }
  }
}
