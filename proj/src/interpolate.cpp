#include "pwlqe/interpolate.hpp"

#include <algorithm>
#include <iterator>

#include "pwlqe/logic.hpp"
#include "pwlqe/normalform.hpp"

namespace pwlqe {

namespace {

Body eliminated_partitioning(const Quantity& q, const ElimOptions& opts) {
  ElimOptions plain = opts;
  plain.simplify = false;
  Quantity e = elim(q, plain);
  if (!q.prefix.empty()) return e.body;
  return is_partitioning(e.body) ? e.body : make_partitioning(e.body);
}

/// A disjunct of the region where f's term exceeds g's term, if any.
std::optional<Disjunct> violation(const GuardedTerm& a, const GuardedTerm& b) {
  const ExtLinExpr& x = a.value;
  const ExtLinExpr& y = b.value;
  if (x.is_neg_inf() || y.is_pos_inf()) return std::nullopt;
  BoolExpr region = make_and(a.guard, b.guard);
  if (x.is_finite() && y.is_finite()) region = make_and(region, fold_atom({x, Rel::Gt, y}));
  auto ds = to_dnf(region);
  if (ds.empty()) return std::nullopt;
  return ds.front();
}

Quantity project(const Quantity& q, const std::set<Var>& vars, Quantifier kind, const ElimOptions& opts) {
  Quantity pre;
  // Later binders are eliminated first, so the lexicographically smallest
  // variable is projected first.
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) pre.prefix.push_back({kind, *it});
  pre.prefix.insert(pre.prefix.end(), q.prefix.begin(), q.prefix.end());
  Body body = q.body;
  if (!q.prefix.empty() || !vars.empty()) body = simplify(is_partitioning(body) ? body : make_partitioning(body));
  pre.body = std::move(body);
  ElimOptions o = opts;
  o.simplify = true;
  return elim(pre, o);
}

std::set<Var> minus(const std::set<Var>& a, const std::set<Var>& b) {
  std::set<Var> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

void require_entailment(const Quantity& f, const Quantity& g, const ElimOptions& opts) {
  auto r = entails(f, g, opts);
  if (!r.holds) throw NotEntailed(*r.witness);
}

}  // namespace

EntailResult entails(const Quantity& f, const Quantity& g, const ElimOptions& opts) {
  Body fb = eliminated_partitioning(f, opts);
  Body gb = eliminated_partitioning(g, opts);
  std::set<Var> all = free_vars(f);
  all.merge(free_vars(g));
  for (const auto& a : fb) {
    for (const auto& b : gb) {
      auto d = violation(a, b);
      if (!d) continue;
      return {false, fm_witness(*d, all)};
    }
  }
  return {true, std::nullopt};
}

Quantity strongest_interpolant(const Quantity& f, const Quantity& g, const ElimOptions& opts) {
  require_entailment(f, g, opts);
  return project(f, minus(free_vars(f), free_vars(g)), Quantifier::Sup, opts);
}

Quantity weakest_interpolant(const Quantity& f, const Quantity& g, const ElimOptions& opts) {
  require_entailment(f, g, opts);
  return project(g, minus(free_vars(g), free_vars(f)), Quantifier::Inf, opts);
}

}  // namespace pwlqe
