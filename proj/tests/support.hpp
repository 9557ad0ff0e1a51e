#pragma once

// Helpers shared by the unit tests and the acceptance runner. Everything here
// checks results by means that do not go through the elimination engine.

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "pwlqe/logic.hpp"
#include "pwlqe/normalform.hpp"
#include "pwlqe/oracle.hpp"
#include "pwlqe/qelim.hpp"
#include "pwlqe/syntax.hpp"

namespace pwlqe::testing {

inline Quantity Q(const std::string& text) { return parse_quantity(text); }
inline Body B(const std::string& text) { return parse_quantity(text).body; }
inline Atom A(const std::string& text) { return parse_bool(text).as_atom(); }
inline ExtLinExpr E(const std::string& text) { return parse_ext_lin(text); }

inline Valuation sigma(std::initializer_list<std::pair<const char*, long>> kv) {
  Valuation s;
  for (const auto& [k, v] : kv) s[k] = Rational(v);
  return s;
}

/// Random conjunction of atoms `x ~ b` and x-free atoms over x, y, z with
/// integer coefficients and constants in [-3, 3].
inline Disjunct random_isolated_disjunct(Rng& rng, int max_atoms = 4) {
  static const std::vector<Var> others = {"y", "z"};
  Disjunct d;
  int n = static_cast<int>(rng.range(1, max_atoms));
  for (int i = 0; i < n; ++i) {
    LinExpr b(Rational(rng.range(-3, 3)));
    for (const auto& v : others)
      if (rng.chance(0.5)) b.add_term(v, Rational(rng.range(-3, 3)));
    Rel rel = static_cast<Rel>(rng.range(0, 3));
    if (rng.chance(0.8)) {
      d.push_back({ExtLinExpr(LinExpr::var("x")), rel, ExtLinExpr(b)});
    } else {
      LinExpr l = LinExpr::var(others[static_cast<std::size_t>(rng.range(0, 1))], Rational(rng.range(1, 3)));
      d.push_back({ExtLinExpr(l), rel, ExtLinExpr(b)});
    }
  }
  return d;
}

/// Whether some x satisfies d at sigma, by intersecting intervals directly.
inline bool interval_nonempty(const Disjunct& d, const Var& x, const Valuation& s) {
  std::optional<Rational> lo, hi;
  bool lo_strict = false, hi_strict = false;
  for (const auto& a : d) {
    if (!a.lhs.mentions(x) && !a.rhs.mentions(x)) {
      if (!atom_eval(s, a)) return false;
      continue;
    }
    Rational b = lin_eval(s, a.rhs.lin());
    bool strict = is_strict(a.rel);
    if (a.rel == Rel::Lt || a.rel == Rel::Le) {
      if (!hi || b < *hi || (b == *hi && strict)) {
        hi = b;
        hi_strict = strict;
      }
    } else if (!lo || b > *lo || (b == *lo && strict)) {
      lo = b;
      lo_strict = strict;
    }
  }
  if (!lo || !hi) return true;
  if (*lo < *hi) return true;
  return *lo == *hi && !lo_strict && !hi_strict;
}

/// Independent satisfiability check for conjunctions over two variables:
/// the closure of a nonempty region cut to a large box is a polygon, and the
/// region contains a vertex or the centroid of some vertices of it.
inline bool geometric_sat(const Disjunct& d, const Var& u, const Var& v) {
  struct Line {
    Rational a, b, c;  // a*u + b*v + c = 0
  };
  std::vector<Line> lines;
  for (const auto& at : d) {
    LinExpr diff = at.lhs.lin() - at.rhs.lin();
    lines.push_back({diff.coeff(u), diff.coeff(v), diff.constant()});
  }
  const Rational big(1000);
  lines.push_back({1, 0, -big});
  lines.push_back({1, 0, big});
  lines.push_back({0, 1, -big});
  lines.push_back({0, 1, big});

  std::vector<std::pair<Rational, Rational>> pts;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Line& p = lines[i];
      const Line& q = lines[j];
      Rational det = p.a * q.b - p.b * q.a;
      if (det.is_zero()) continue;
      Rational x = (p.b * q.c - q.b * p.c) / det;
      Rational y = (q.a * p.c - p.a * q.c) / det;
      if (abs(x) > big || abs(y) > big) continue;
      pts.emplace_back(x, y);
    }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto ok = [&](const Rational& x, const Rational& y) {
    Valuation s{{u, x}, {v, y}};
    return disjunct_eval(s, d);
  };
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (ok(pts[i].first, pts[i].second)) return true;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (ok((pts[i].first + pts[j].first) / Rational(2), (pts[i].second + pts[j].second) / Rational(2))) return true;
      for (std::size_t k = j + 1; k < n; ++k)
        if (ok((pts[i].first + pts[j].first + pts[k].first) / Rational(3),
               (pts[i].second + pts[j].second + pts[k].second) / Rational(3)))
          return true;
    }
  }
  return false;
}

/// Random partitioning body over the given variables.
inline Body random_partitioning_body(const std::vector<Var>& vars, std::uint64_t seed) {
  RandomParams p;
  p.vars = vars;
  p.quantifiers = 0;
  p.summands = 2;
  p.atoms_per_guard = 2;
  p.partition = true;
  return random_quantity(p, seed).body;
}

/// Loose size bounds on one elimination round for an input body of width n
/// and depth m: width <= n*2^m*(m+2)^(n*2^m) and
/// depth <= n*2^m*(((m+2)/2)^2 + m + 1).
struct SizeBounds {
  mpz_class width;
  mpq_class depth;
};

inline SizeBounds size_bounds(unsigned long n, unsigned long m) {
  mpz_class pieces = mpz_class(n) << m;
  mpz_class power;
  mpz_pow_ui(power.get_mpz_t(), mpz_class(m + 2).get_mpz_t(), pieces.get_ui());
  mpq_class half(m + 2, 2);
  return {pieces * power, mpq_class(pieces) * (half * half + mpq_class(m + 1))};
}

struct Round {
  Body input;  // partitioning form of the quantity body
  Body output;
};

/// One elimination round of the innermost quantifier, keeping the
/// partitioned input whose width and depth the size bounds refer to.
inline Round single_round(const Quantity& q) {
  Round r;
  r.input = is_partitioning(q.body) ? q.body : make_partitioning(q.body);
  const Binder& b = q.prefix.back();
  r.output = elim_one(b.q, b.var, to_gnf_body(r.input, b.var, true));
  return r;
}

/// f over {x, y}; g = (sup y : f) + h with h nonnegative over {x, z}, so
/// f entails g and x is the only shared variable.
inline std::pair<Quantity, Quantity> entailing_pair(std::uint64_t seed) {
  RandomParams p;
  p.vars = {"x", "y"};
  p.quantifiers = 0;
  p.summands = 2;
  p.atoms_per_guard = 2;
  Quantity f = random_quantity(p, seed);

  p.vars = {"x", "z"};
  Body h = random_quantity(p, seed + 100000).body;
  Rng rng(seed);
  for (auto& t : h) {
    // Nonnegative values: constants in [0, 3] or oo.
    t.value = rng.chance(0.15) ? ExtLinExpr::pos_inf() : ExtLinExpr(LinExpr(Rational(rng.range(0, 3))));
  }
  Quantity g{{{Quantifier::Sup, "y"}}, f.body};
  // h is free of y, so sup y : (f + h) = (sup y : f) + h.
  g.body.insert(g.body.end(), h.begin(), h.end());
  return {f, g};
}

/// Whether the variable occurs anywhere in the body.
inline bool mentions(const Body& body, const Var& x) {
  return free_vars(body).count(x) != 0;
}

/// Runs a command and returns its exit status and standard output.
struct CmdResult {
  int status = -1;
  std::string out;
};

inline CmdResult run(const std::string& cmd) {
  CmdResult r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace pwlqe::testing
