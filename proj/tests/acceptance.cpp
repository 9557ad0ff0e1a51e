// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit status if
// any criterion fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "pwlqe/errors.hpp"
#include "pwlqe/interpolate.hpp"
#include "support.hpp"

using namespace pwlqe;
using namespace pwlqe::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;
};

Verdict fail(const std::string& why) { return {false, why}; }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream out;
  out.precision(2);
  out << std::fixed << s << " s";
  return out.str();
}

std::string cli() { return std::string("'") + PWLQE_CLI + "'"; }
std::string data(const char* name) { return std::string("'") + PWLQE_DATA + "/" + name + "'"; }

Quantity load(const char* name) {
  std::ifstream in(std::string(PWLQE_DATA) + "/" + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return read_quantity(buf.str());
}

std::string show(const Valuation& s) {
  std::string out;
  for (const auto& [v, r] : s) out += (out.empty() ? "" : ", ") + v + "=" + r.to_string();
  return out;
}

const char* kRunning = "sup x : [y1 >= z -> (x - 2 < y1 && -x >= y3 && x >= y2)] * (2*x + z)";

Quantity random_single(std::uint64_t seed) {
  RandomParams p;
  p.summands = 3;
  p.atoms_per_guard = 3;
  p.infinity_prob = 0.1;
  return random_quantity(p, seed);
}

Verdict running_example() {
  auto t0 = Clock::now();
  Quantity q = Q(kRunning);
  CmdResult plain = run(cli() + " elim " + data("example1.pwl"));
  if (plain.status != 0) return fail("elim exited with " + std::to_string(plain.status));
  Quantity r = read_quantity(plain.out);
  if (!r.prefix.empty()) return fail("output still quantified");
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    Valuation s = random_valuation(free_vars(q), rng);
    if (eval_quantity(s, r.body) != oracle_sup(s, "x", q.body)) return fail("oracle mismatch at " + show(s));
  }

  CmdResult simp = run(cli() + " elim --simplify " + data("example1.pwl"));
  if (simp.status != 0) return fail("elim --simplify exited with " + std::to_string(simp.status));
  // The eliminants of the three GNF disjuncts: the bounded region, the
  // unbounded one and the zero-valued rest.
  Body bounded = B(
      "[y2 < y1 + 2 && y2 <= -y3 && y1 + 2 <= -y3] * (2*y1 + z + 4)"
      " + [y2 < y1 + 2 && y2 <= -y3 && y1 + 2 > -y3] * (-2*y3 + z)"
      " + [!(y2 < y1 + 2 && y2 <= -y3)] * (-oo)");
  Body unbounded = B("[y1 < z] * oo + [y1 >= z] * (-oo)");
  Body rest = B("[y1 >= z] * 0 + [y1 < z] * (-oo)");
  Quantity composed{{}, max_of({bounded, unbounded, rest})};
  auto eq = equiv_sample(read_quantity(simp.out), composed, 1000, 2);
  if (!eq.equal) return fail("simplified output differs from the composed eliminants at " + show(*eq.counterexample));
  double t = seconds_since(t0);
  if (t >= 5.0) return fail("took " + fmt_seconds(t));
  return {true, "1000 oracle points, composition equal, " + fmt_seconds(t)};
}

/// Criteria 2 and 3 share one corpus of disjuncts and valuations.
struct BoundCounts {
  long checks = 0, exists_bad = 0, select_bad = 0;
};

BoundCounts bound_checks() {
  BoundCounts c;
  Rng rng(2024);
  for (int i = 0; i < 500; ++i) {
    Disjunct d = random_isolated_disjunct(rng);
    BoolExpr ex = phi_exists(d, "x");
    BoundSets b = bounds(d, "x");
    auto up = b.upper();
    auto lo = b.lower();
    for (int k = 0; k < 20; ++k) {
      Valuation s = random_valuation({"y", "z"}, rng);
      ++c.checks;
      bool nonempty = interval_nonempty(d, "x", s);
      if (bool_eval(s, ex) != nonempty) ++c.exists_bad;
      if (!nonempty) continue;

      ExtRat least = ExtRat::pos_inf(), greatest = ExtRat::neg_inf();
      for (const auto& u : up) least = std::min(least, lin_eval(s, u));
      for (const auto& l : lo) greatest = std::max(greatest, lin_eval(s, l));
      int chosen_up = 0, chosen_lo = 0;
      bool values_ok = true;
      for (std::size_t j = 0; j < up.size(); ++j)
        if (bool_eval(s, phi_sup(b, j))) {
          ++chosen_up;
          values_ok = values_ok && lin_eval(s, up[j]) == least;
        }
      for (std::size_t j = 0; j < lo.size(); ++j)
        if (bool_eval(s, phi_inf(b, j))) {
          ++chosen_lo;
          values_ok = values_ok && lin_eval(s, lo[j]) == greatest;
        }
      if (chosen_up != 1 || chosen_lo != 1 || !values_ok) ++c.select_bad;
    }
  }
  return c;
}

Verdict single_quantifier(double& elapsed) {
  auto t0 = Clock::now();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Quantity q = random_single(seed);
    const Binder& b = q.prefix[0];
    Quantity r = elim(q);
    std::string where = "instance " + std::to_string(seed) + ": " + print_quantity(q);
    if (!r.prefix.empty()) return fail(where + " still quantified");
    if (mentions(r.body, b.var)) return fail(where + " output mentions " + b.var);
    if (!is_partitioning(r.body)) return fail(where + " output not partitioning");
    Rng rng(seed + 7000);
    for (int k = 0; k < 100; ++k) {
      Valuation s = random_valuation({"x", "y", "z"}, rng);
      if (eval_quantity(s, r.body) != oracle(b.q, s, b.var, q.body)) return fail(where + " differs at " + show(s));
    }
  }
  elapsed = seconds_since(t0);
  if (elapsed >= 120.0) return fail("took " + fmt_seconds(elapsed));
  return {true, "200 instances x 100 valuations, " + fmt_seconds(elapsed)};
}

Verdict nested() {
  RandomParams p;
  p.summands = 2;
  p.atoms_per_guard = 2;
  p.infinity_prob = 0.1;
  p.quantifiers = 2;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Quantity q = random_quantity(p, seed);
    Body once = elim(Quantity{{q.prefix[1]}, q.body}).body;
    Quantity r = elim(q);
    std::string where = "instance " + std::to_string(seed) + ": " + print_quantity(q);
    if (!r.prefix.empty()) return fail(where + " still quantified");
    Rng rng(seed + 9000);
    for (int k = 0; k < 50; ++k) {
      Valuation s = random_valuation({"z"}, rng);
      if (eval_quantity(s, r.body) != oracle(q.prefix[0].q, s, q.prefix[0].var, once))
        return fail(where + " differs at " + show(s));
    }
  }
  return {true, "50 instances x 50 valuations"};
}

Verdict size_bounds_hold() {
  std::size_t widest = 0, deepest = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Quantity q = random_single(seed);
    Round round = single_round(q);
    SizeBounds bound = size_bounds(width(round.input), depth(round.input));
    std::size_t w = width(round.output), d = depth(round.output);
    widest = std::max(widest, w);
    deepest = std::max(deepest, d);
    if (mpz_class(w) > bound.width || mpq_class(d) > bound.depth)
      return fail("instance " + std::to_string(seed) + " has width " + std::to_string(w) + ", depth " +
                  std::to_string(d));
  }
  return {true, "200 instances, largest width " + std::to_string(widest) + ", depth " + std::to_string(deepest)};
}

Verdict craig_example() {
  Quantity f = load("craig_f.pwl");
  Quantity g = load("craig_g.pwl");
  CmdResult rs = run(cli() + " interpolate --strongest " + data("craig_f.pwl") + " " + data("craig_g.pwl"));
  CmdResult rw = run(cli() + " interpolate --weakest " + data("craig_f.pwl") + " " + data("craig_g.pwl"));
  if (rs.status != 0 || rw.status != 0) return fail("interpolate failed");
  Quantity s = read_quantity(rs.out), w = read_quantity(rw.out);
  Quantity want_s = Q("[x >= 0] * 2*x"), want_w = Q("[x >= 0] * (3*x + 1)");
  if (!equiv_sample(s, want_s, 1000, 3).equal) return fail("strongest differs by sampling: " + print_quantity(s));
  if (!equiv_sample(w, want_w, 1000, 4).equal) return fail("weakest differs by sampling: " + print_quantity(w));
  if (!entails(s, want_s).holds || !entails(want_s, s).holds) return fail("strongest not mutually entailing");
  if (!entails(w, want_w).holds || !entails(want_w, w).holds) return fail("weakest not mutually entailing");
  if (!entails(f, s).holds || !entails(s, w).holds || !entails(w, g).holds) return fail("entailment chain broken");
  return {true, "strongest " + print_quantity(s) + ", weakest " + print_quantity(w)};
}

Verdict sandwich() {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto [f, g] = entailing_pair(seed);
    std::set<Var> fv = free_vars(f), gv = free_vars(g);
    Quantity s = strongest_interpolant(f, g);
    Quantity w = weakest_interpolant(f, g);
    std::string where = "pair " + std::to_string(seed) + ": " + print_quantity(f);
    for (const auto* i : {&s, &w})
      for (const auto& v : free_vars(*i))
        if (!fv.count(v) || !gv.count(v)) return fail(where + " interpolant mentions " + v);
    if (!entails(f, s).holds || !entails(s, g).holds) return fail(where + " strongest not in between");
    if (!entails(f, w).holds || !entails(w, g).holds) return fail(where + " weakest not in between");
  }
  return {true, "100 pairs"};
}

Verdict well_formedness() {
  CmdResult bad = run(cli() + " check " + data("overlap.pwl"));
  if (bad.status != 2 || bad.out != "violation: terms 1 and 2 overlap with values oo and -oo\n")
    return fail("check on the overlapping input: status " + std::to_string(bad.status) + ", '" + bad.out + "'");
  CmdResult ok = run(cli() + " check " + data("disjoint.pwl"));
  if (ok.status != 0 || ok.out != "ok\n") return fail("check rejects the disjoint variant");
  CmdResult ev = run(cli() + " eval " + data("overlap.pwl") + " --sigma x=1");
  if (ev.status != 2 || !ev.out.empty()) return fail("eval ran on the ill-formed input");
  try {
    elim(load("overlap.pwl"));
    return fail("elim accepted the ill-formed input");
  } catch (const WellFormednessViolation&) {
  }
  return {true, "pair (1, 2) rejected, disjoint variant accepted"};
}

Verdict max_min() {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::vector<Body> bodies;
    std::size_t count = 2 + seed % 2;
    for (std::size_t k = 0; k < count; ++k) bodies.push_back(random_partitioning_body({"x", "y"}, 31 * seed + k));
    Body hi = max_of(bodies), lo = min_of(bodies);
    std::string where = "case " + std::to_string(seed);
    if (!is_partitioning(hi) || !is_partitioning(lo)) return fail(where + " result not partitioning");
    Rng rng(seed + 11000);
    for (int k = 0; k < 100; ++k) {
      Valuation s = random_valuation({"x", "y"}, rng);
      ExtRat want_hi = ExtRat::neg_inf(), want_lo = ExtRat::pos_inf();
      for (const auto& b : bodies) {
        ExtRat v = eval_quantity(s, b);
        want_hi = std::max(want_hi, v);
        want_lo = std::min(want_lo, v);
      }
      if (eval_quantity(s, hi) != want_hi || eval_quantity(s, lo) != want_lo)
        return fail(where + " differs at " + show(s));
    }
  }
  return {true, "200 cases x 100 valuations"};
}

Verdict guarded(const std::function<Verdict()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return fail(std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int n, const std::string& name, const Verdict& v) {
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << n << " " << name << ": " << v.detail << std::endl;
  };

  report(1, "running example", guarded(running_example));

  BoundCounts counts;
  Verdict bc = guarded([&] {
    counts = bound_checks();
    return Verdict{};
  });
  if (!bc.pass) {
    report(2, "existence residue", bc);
    report(3, "bound selection", bc);
  } else {
    std::string n = std::to_string(counts.checks) + " checks, ";
    report(2, "existence residue",
           {counts.exists_bad == 0, n + std::to_string(counts.exists_bad) + " disagreements"});
    report(3, "bound selection", {counts.select_bad == 0, n + std::to_string(counts.select_bad) + " disagreements"});
  }

  double elapsed = 0;
  report(4, "single quantifier", guarded([&] { return single_quantifier(elapsed); }));
  report(5, "nested quantifiers", guarded(nested));
  report(6, "size bounds", guarded(size_bounds_hold));
  report(7, "interpolation example", guarded(craig_example));
  report(8, "interpolant sandwich", guarded(sandwich));
  report(9, "well-formedness", guarded(well_formedness));
  report(10, "max and min", guarded(max_min));
  return failures == 0 ? 0 : 1;
}
