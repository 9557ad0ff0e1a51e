#include "pwlqe/oracle.hpp"

#include <algorithm>

#include "pwlqe/errors.hpp"
#include "pwlqe/logic.hpp"
#include "pwlqe/normalform.hpp"

namespace pwlqe {

ExtRat eval_quantity(const Valuation& sigma, const Body& body) {
  ExtRat sum(0);
  for (const auto& t : body)
    if (bool_eval(sigma, t.guard)) sum = ext_add(sum, lin_eval(sigma, t.value));
  return sum;
}

namespace {

void collect_atoms(const BoolExpr& e, std::vector<Atom>& out) {
  if (e.kind() == BoolExpr::Kind::Atom) {
    out.push_back(e.as_atom());
    return;
  }
  for (const auto& c : e.children()) collect_atoms(c, out);
}

/// Value of the body as a function of x on one region: slope*x + offset, or
/// an infinity.
struct Piece {
  ExtRat inf;  // zero when finite
  Rational slope, offset;

  bool infinite() const { return !inf.is_finite(); }
  Rational at(const Rational& p) const { return slope * p + offset; }
};

Piece piece_at(const Valuation& sigma, const Var& x, const Body& body, const Rational& p) {
  Valuation s = sigma;
  s[x] = p;
  Piece pc;
  pc.inf = ExtRat(0);
  for (const auto& t : body) {
    if (!bool_eval(s, t.guard)) continue;
    if (!t.value.is_finite()) {
      pc.inf = ext_add(pc.inf, t.value.is_pos_inf() ? ExtRat::pos_inf() : ExtRat::neg_inf());
      continue;
    }
    pc.slope += t.value.lin().coeff(x);
    pc.offset += lin_eval(s, t.value.lin().without(x));
  }
  return pc;
}

std::vector<Rational> breakpoints(const Valuation& sigma, const Var& x, const Body& body) {
  std::vector<Atom> atoms;
  for (const auto& t : body) collect_atoms(t.guard, atoms);
  std::vector<Rational> pts;
  for (const auto& a : atoms) {
    if (!a.lhs.is_finite() || !a.rhs.is_finite()) continue;
    LinExpr d = a.lhs.lin() - a.rhs.lin();
    Rational c = d.coeff(x);
    if (c.is_zero()) continue;
    pts.push_back(-lin_eval(sigma, d.without(x)) / c);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

/// Extreme value (sup when upward) of the body over x.
ExtRat extremum(const Valuation& sigma, const Var& x, const Body& body, bool upward) {
  const ExtRat unbounded = upward ? ExtRat::pos_inf() : ExtRat::neg_inf();
  ExtRat best = upward ? ExtRat::neg_inf() : ExtRat::pos_inf();
  auto consider = [&](const ExtRat& v) {
    if (upward ? v > best : v < best) best = v;
  };
  // Value of a finite piece approached towards an infinite end.
  auto toward = [&](const Piece& pc, int direction, const Rational& anchor) {
    int s = pc.slope.sign() * direction;
    if (s == 0) return ExtRat(pc.offset);
    if ((s > 0) == upward) return unbounded;
    return ExtRat(pc.at(anchor));
  };

  std::vector<Rational> pts = breakpoints(sigma, x, body);
  if (pts.empty()) {
    Piece pc = piece_at(sigma, x, body, Rational(0));
    if (pc.infinite()) return pc.inf;
    return pc.slope.is_zero() ? ExtRat(pc.offset) : unbounded;
  }

  for (std::size_t i = 0; i < pts.size(); ++i) {
    Piece here = piece_at(sigma, x, body, pts[i]);
    consider(here.infinite() ? here.inf : ExtRat(here.at(pts[i])));
    if (i + 1 < pts.size()) {
      Piece mid = piece_at(sigma, x, body, (pts[i] + pts[i + 1]) / Rational(2));
      if (mid.infinite()) {
        consider(mid.inf);
      } else {
        Rational a = mid.at(pts[i]), b = mid.at(pts[i + 1]);
        consider(ExtRat(upward ? std::max(a, b) : std::min(a, b)));
      }
    }
  }
  Piece left = piece_at(sigma, x, body, pts.front() - Rational(1));
  consider(left.infinite() ? left.inf : toward(left, -1, pts.front()));
  Piece right = piece_at(sigma, x, body, pts.back() + Rational(1));
  consider(right.infinite() ? right.inf : toward(right, 1, pts.back()));
  return best;
}

}  // namespace

ExtRat oracle_sup(const Valuation& sigma, const Var& x, const Body& body) { return extremum(sigma, x, body, true); }

ExtRat oracle_inf(const Valuation& sigma, const Var& x, const Body& body) { return extremum(sigma, x, body, false); }

ExtRat oracle(Quantifier q, const Valuation& sigma, const Var& x, const Body& body) {
  return q == Quantifier::Sup ? oracle_sup(sigma, x, body) : oracle_inf(sigma, x, body);
}

// ---------------------------------------------------------------------------
// Random instances

long Rng::range(long lo, long hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(gen_() % span);
}

bool Rng::chance(double p) {
  constexpr std::uint64_t kScale = 1'000'000;
  return static_cast<double>(gen_() % kScale) < p * static_cast<double>(kScale);
}

namespace {

LinExpr random_lin(const std::vector<Var>& vars, int bound, bool with_constant, Rng& rng) {
  LinExpr e;
  while (e.is_constant()) {
    for (const auto& v : vars)
      if (rng.chance(0.6)) e.add_term(v, Rational(rng.range(-bound, bound)));
  }
  if (with_constant) e.add_constant(Rational(rng.range(-bound, bound)));
  return e;
}

BoolExpr random_guard(const RandomParams& p, Rng& rng) {
  int n = static_cast<int>(rng.range(1, std::max(1, p.atoms_per_guard)));
  std::vector<BoolExpr> atoms;
  for (int i = 0; i < n; ++i) {
    Rel rel = static_cast<Rel>(rng.range(0, 3));
    BoolExpr a = BoolExpr::atom({random_lin(p.vars, p.coeff_bound, false, rng), rel,
                                 LinExpr(Rational(rng.range(-p.coeff_bound, p.coeff_bound)))});
    if (rng.chance(0.15)) a = BoolExpr::negation_raw(a);
    atoms.push_back(std::move(a));
  }
  while (atoms.size() > 1) {
    std::size_t i = static_cast<std::size_t>(rng.range(0, static_cast<long>(atoms.size()) - 2));
    std::vector<BoolExpr> pair{atoms[i], atoms[i + 1]};
    BoolExpr joined = rng.chance(0.65) ? BoolExpr::and_raw(std::move(pair)) : BoolExpr::or_raw(std::move(pair));
    atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(i), atoms.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    atoms.insert(atoms.begin() + static_cast<std::ptrdiff_t>(i), std::move(joined));
  }
  return atoms.front();
}

ExtLinExpr random_value(const RandomParams& p, Rng& rng) {
  if (rng.chance(p.infinity_prob)) return rng.chance(0.5) ? ExtLinExpr::pos_inf() : ExtLinExpr::neg_inf();
  if (rng.chance(0.2)) return ExtLinExpr(LinExpr(Rational(rng.range(-p.coeff_bound, p.coeff_bound))));
  return ExtLinExpr(random_lin(p.vars, p.coeff_bound, true, rng));
}

}  // namespace

Quantity random_quantity(const RandomParams& params, std::uint64_t seed) {
  Rng rng(seed);
  for (;;) {
    Quantity q;
    for (int i = 0; i < params.quantifiers && i < static_cast<int>(params.vars.size()); ++i)
      q.prefix.push_back({rng.chance(0.5) ? Quantifier::Sup : Quantifier::Inf, params.vars[static_cast<std::size_t>(i)]});
    int n = static_cast<int>(rng.range(1, std::max(1, params.summands)));
    for (int i = 0; i < n; ++i) {
      BoolExpr g = random_guard(params, rng);
      q.body.push_back({std::move(g), random_value(params, rng)});
    }
    if (check_well_formed(q)) continue;
    if (params.partition) q.body = make_partitioning(q.body);
    return q;
  }
}

Valuation random_valuation(const std::set<Var>& vars, Rng& rng) {
  Valuation s;
  for (const auto& v : vars) {
    long den = rng.range(1, 8);
    s[v] = Rational(rng.range(-10 * den, 10 * den), den);
  }
  return s;
}

EquivResult equiv_sample(const Quantity& f, const Quantity& g, int n, std::uint64_t seed) {
  std::set<Var> vars = free_vars(f);
  vars.merge(free_vars(g));

  std::map<Var, std::vector<Rational>> near;
  std::vector<Atom> atoms;
  for (const auto& t : f.body) collect_atoms(t.guard, atoms);
  for (const auto& t : g.body) collect_atoms(t.guard, atoms);
  const Rational eighth(1, 8);
  for (const auto& a : atoms) {
    if (!a.lhs.is_finite() || !a.rhs.is_finite()) continue;
    LinExpr d = a.lhs.lin() - a.rhs.lin();
    if (d.coeffs().size() != 1) continue;
    const auto& [v, c] = *d.coeffs().begin();
    Rational root = -d.constant() / c;
    for (const Rational& p : {root - eighth, root, root + eighth}) near[v].push_back(p);
  }

  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    Valuation s;
    for (const auto& v : vars) {
      long pick = rng.range(0, 9);
      const auto& pool = near[v];
      if (pick < 4 || (pick >= 8 && pool.empty())) {
        long den = rng.range(1, 8);
        s[v] = Rational(rng.range(-10 * den, 10 * den), den);
      } else if (pick < 6) {
        s[v] = Rational(rng.range(-10, 10));
      } else if (pick < 8) {
        s[v] = Rational(rng.range(-40, 40), 4);
      } else {
        s[v] = pool[static_cast<std::size_t>(rng.range(0, static_cast<long>(pool.size()) - 1))];
      }
    }
    if (eval_quantity(s, f.body) != eval_quantity(s, g.body)) return {false, s};
  }
  return {true, std::nullopt};
}

}  // namespace pwlqe
