#include <gtest/gtest.h>

#include "pwlqe/normalform.hpp"
#include "support.hpp"

using namespace pwlqe;
using namespace pwlqe::testing;

namespace {

bool dnf_eval(const Valuation& s, const std::vector<Disjunct>& ds) {
  for (const auto& d : ds)
    if (disjunct_eval(s, d)) return true;
  return false;
}

BoolExpr random_guard(std::uint64_t seed, std::vector<Var> vars = {"x", "y", "z"}) {
  RandomParams p;
  p.vars = std::move(vars);
  p.quantifiers = 0;
  p.summands = 1;
  p.atoms_per_guard = 4;
  return random_quantity(p, seed).body[0].guard;
}

}  // namespace

TEST(Atoms, Evaluation) {
  EXPECT_TRUE(atom_eval(sigma({{"x", 3}}), {E("x"), Rel::Lt, ExtLinExpr::pos_inf()}));
  EXPECT_FALSE(atom_eval(sigma({{"y", 1}}), A("2*y >= 3")));
  EXPECT_FALSE(atom_eval(Valuation{}, {ExtLinExpr::neg_inf(), Rel::Lt, ExtLinExpr::neg_inf()}));
}

TEST(Atoms, Negation) {
  EXPECT_EQ(negate_atom(A("x < 3")), A("x >= 3"));
  Atom a{E("y"), Rel::Ge, ExtLinExpr::neg_inf()};
  EXPECT_EQ(negate_atom(a), (Atom{E("y"), Rel::Lt, ExtLinExpr::neg_inf()}));
  EXPECT_EQ(negate_atom(negate_atom(A("x <= 0"))), A("x <= 0"));
}

TEST(Atoms, Folding) {
  EXPECT_EQ(fold_atom_value({ExtLinExpr::neg_inf(), Rel::Le, ExtLinExpr::pos_inf()}), Folded::True);
  EXPECT_EQ(fold_atom_value(A("3 < 2")), Folded::False);
  EXPECT_EQ(fold_atom_value({E("y"), Rel::Lt, ExtLinExpr::pos_inf()}), Folded::True);
  EXPECT_EQ(fold_atom_value(A("x - x >= 0")), Folded::True);
  EXPECT_EQ(fold_atom_value(A("x >= 0")), Folded::Open);
  EXPECT_EQ(fold_atom(A("x >= 0")), BoolExpr::atom(A("x >= 0")));
}

TEST(Dnf, RunningExampleNegation) {
  // The negated part of the running example's guard.
  BoolExpr phi = parse_bool("y1 >= z && !(x - 2 < y1 && -x >= y3 && x >= y2)");
  EXPECT_EQ(to_dnf(phi).size(), 3u);
  EXPECT_EQ(to_dnf(parse_bool("x >= 1")).size(), 1u);
  EXPECT_TRUE(to_dnf(parse_bool("x < 0 && x > 1")).empty());
  EXPECT_TRUE(to_dnf(BoolExpr::truth(false)).empty());
  ASSERT_EQ(to_dnf(BoolExpr::truth(true)).size(), 1u);
  EXPECT_TRUE(to_dnf(BoolExpr::truth(true))[0].empty());
}

// The DNF of a random guard agrees with the guard at random valuations.
TEST(Dnf, EquivalentToInput) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    BoolExpr g = random_guard(seed);
    auto ds = to_dnf(g);
    auto dd = to_disjoint_dnf(g);
    Rng rng(seed + 1000);
    for (int k = 0; k < 40; ++k) {
      Valuation s = random_valuation({"x", "y", "z"}, rng);
      bool want = bool_eval(s, g);
      ASSERT_EQ(dnf_eval(s, ds), want) << to_string(g);
      ASSERT_EQ(dnf_eval(s, dd), want) << to_string(g);
      int hits = 0;
      for (const auto& d : dd) hits += disjunct_eval(s, d) ? 1 : 0;
      ASSERT_LE(hits, 1) << "disjuncts overlap for " << to_string(g);
    }
  }
}

TEST(Isolate, Examples) {
  EXPECT_EQ(isolate(A("-x >= y3"), "x"), A("x <= -y3"));
  EXPECT_EQ(isolate(A("x - 2 < y1"), "x"), A("x < y1 + 2"));
  EXPECT_EQ(isolate(A("2*x + y <= 4 + x - y"), "x"), A("x <= -2*y + 4"));
  EXPECT_EQ(isolate(A("2*x < 4"), "x"), A("x < 2"));
  EXPECT_EQ(isolate(A("y > 1"), "x"), A("y > 1"));
  EXPECT_FALSE(isolate(A("x + y > x"), "x").lhs.mentions("x"));
}

// An isolated atom holds exactly where the original one does.
TEST(Isolate, Sound) {
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    LinExpr l, r;
    for (const char* v : {"x", "y", "z"}) {
      if (rng.chance(0.7)) l.add_term(v, Rational(rng.range(-3, 3)));
      if (rng.chance(0.5)) r.add_term(v, Rational(rng.range(-3, 3)));
    }
    r.add_constant(Rational(rng.range(-3, 3)));
    Atom a{ExtLinExpr(l), static_cast<Rel>(rng.range(0, 3)), ExtLinExpr(r)};
    Atom b = isolate(a, "x");
    EXPECT_TRUE(is_isolated(b, "x")) << to_string(a) << " -> " << to_string(b);
    for (int k = 0; k < 20; ++k) {
      Valuation s = random_valuation({"x", "y", "z"}, rng);
      ASSERT_EQ(atom_eval(s, a), atom_eval(s, b)) << to_string(a) << " -> " << to_string(b);
    }
  }
}

TEST(Sat, Examples) {
  EXPECT_FALSE(disjunct_sat({A("x < 0"), A("x > 1")}));
  EXPECT_TRUE(disjunct_sat({A("x >= 0"), A("x <= -y3")}));
  EXPECT_TRUE(disjunct_sat({}));
  EXPECT_FALSE(disjunct_sat({A("x > y"), A("y > z"), A("z > x")}));
  EXPECT_TRUE(disjunct_sat({A("x >= y"), A("y >= z"), A("z >= x")}));
  EXPECT_FALSE(bool_sat(BoolExpr::truth(false)));
  EXPECT_TRUE(bool_sat(parse_bool("y2 < y1 + 2 && y2 <= -y3")));
  EXPECT_TRUE(bool_sat(parse_bool("x < 0 || x > 1")));
}

// Fourier-Motzkin agrees with a geometric search over two variables.
TEST(Sat, AgreesWithGeometricCheck) {
  Rng rng(17);
  int sat = 0;
  for (int i = 0; i < 400; ++i) {
    Disjunct d;
    int n = static_cast<int>(rng.range(2, 5));
    for (int k = 0; k < n; ++k) {
      LinExpr l;
      l.add_term("u", Rational(rng.range(-3, 3)));
      l.add_term("v", Rational(rng.range(-3, 3)));
      d.push_back({ExtLinExpr(l), static_cast<Rel>(rng.range(0, 3)), ExtLinExpr(LinExpr(Rational(rng.range(-3, 3))))});
    }
    bool want = geometric_sat(d, "u", "v");
    sat += want ? 1 : 0;
    std::string text;
    for (const auto& a : d) text += to_string(a) + "; ";
    ASSERT_EQ(disjunct_sat(d), want) << text;
    auto w = fm_witness(d, {"u", "v"});
    ASSERT_EQ(w.has_value(), want) << text;
    if (w) {
      ASSERT_TRUE(disjunct_eval(*w, d)) << text;
    }
  }
  // Both outcomes occur often enough for the comparison to mean something.
  EXPECT_GT(sat, 60);
  EXPECT_LT(sat, 340);
}

TEST(Witness, Examples) {
  auto w = fm_witness({A("x > 0"), A("x < 2")});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->at("x"), Rational(1));
  EXPECT_FALSE(fm_witness({A("x > 0"), A("x < 0")}));
  auto e = fm_witness({}, {"a", "b"});
  ASSERT_TRUE(e);
  EXPECT_EQ(e->at("a"), Rational(0));
  EXPECT_EQ(e->at("b"), Rational(0));
}

// The case-splitting check agrees with the DNF route on random guards and
// combinations of them, a good share of which are unsatisfiable.
TEST(Sat, CaseSplitAgreesWithDnf) {
  int sat = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    BoolExpr g = random_guard(seed);
    BoolExpr h = random_guard(seed + 7000, {"x", "y"});
    BoolExpr k = random_guard(seed + 14000, {"x"});
    BoolExpr m = random_guard(seed + 21000, {"x"});
    for (const BoolExpr& e : {make_not(g), make_and({g, h, k}), make_and(make_not(g), make_not(h)),
                              make_and({g, make_not(h), make_or(make_not(g), k)}), make_and({k, m, make_not(h)}),
                              make_and(make_not(k), make_not(m))}) {
      bool want = !to_dnf(e).empty();
      sat += want ? 1 : 0;
      ++total;
      ASSERT_EQ(bool_sat(e), want) << to_string(e);
    }
  }
  EXPECT_GT(sat, total / 5);
  EXPECT_LT(sat, total * 4 / 5);
}

// Satisfiability does not depend on what was asked before.
TEST(Sat, VerdictsSurviveCacheClearing) {
  Disjunct d{A("x + y > 1"), A("x - y < 0"), A("y <= 1/2")};
  bool first = disjunct_sat(d);
  clear_sat_cache();
  EXPECT_EQ(disjunct_sat(d), first);
  EXPECT_FALSE(first);
}
