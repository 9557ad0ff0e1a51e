#include "pwlqe/normalform.hpp"

#include <algorithm>

#include "pwlqe/logic.hpp"
#include "sat_engine.hpp"

namespace pwlqe {

Body make_partitioning(const Body& body) {
  // A region is a DNF; each term doubles the candidate regions, pruned on
  // unsatisfiability.
  std::vector<std::vector<Disjunct>> pos, neg;
  for (const auto& t : body) {
    pos.push_back(to_dnf(t.guard));
    neg.push_back(to_disjoint_dnf(make_not(t.guard)));
  }

  Body out;
  std::vector<bool> taken(body.size(), false);
  auto emit = [&]() {
    std::vector<BoolExpr> parts;
    ExtRat marker(0);
    LinExpr finite;
    for (std::size_t k = 0; k < body.size(); ++k) {
      parts.push_back(taken[k] ? body[k].guard : make_not(body[k].guard));
      if (!taken[k]) continue;
      const ExtLinExpr& v = body[k].value;
      if (v.is_pos_inf()) marker = ext_add(marker, ExtRat::pos_inf());
      else if (v.is_neg_inf()) marker = ext_add(marker, ExtRat::neg_inf());
      else finite += v.lin();
    }
    ExtLinExpr value = marker.is_pos_inf()   ? ExtLinExpr::pos_inf()
                       : marker.is_neg_inf() ? ExtLinExpr::neg_inf()
                                             : ExtLinExpr(std::move(finite));
    out.push_back({make_and(std::move(parts)), std::move(value)});
  };

  auto rec = [&](auto&& self, std::size_t i, const std::vector<Disjunct>& region) -> void {
    if (region.empty()) return;
    if (i == body.size()) {
      emit();
      return;
    }
    taken[i] = true;
    self(self, i + 1, conjoin_dnf(region, pos[i]));
    taken[i] = false;
    self(self, i + 1, conjoin_dnf(region, neg[i]));
  };
  rec(rec, 0, std::vector<Disjunct>{Disjunct{}});

  if (out.empty()) out.push_back({BoolExpr::truth(true), ExtLinExpr(0)});
  return out;
}

bool is_partitioning(const Body& body) {
  std::vector<BoolExpr> guards;
  for (const auto& t : body) guards.push_back(t.guard);
  detail::FormulaSet set(std::move(guards));
  // Each guard against the union of the later ones.
  for (std::size_t i = 0; i + 1 < body.size(); ++i) {
    detail::FormulaSet::Clause later;
    for (std::size_t j = i + 1; j < body.size(); ++j) later.emplace_back(j, false);
    if (set.sat({{{i, false}}, later})) return false;
  }
  std::vector<detail::FormulaSet::Clause> uncovered;
  for (std::size_t i = 0; i < body.size(); ++i) uncovered.push_back({{i, true}});
  return !set.sat(uncovered);
}

std::optional<std::pair<std::size_t, std::size_t>> check_well_formed(const Body& body) {
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i].value.is_finite()) continue;
    for (std::size_t j = i + 1; j < body.size(); ++j) {
      const auto& a = body[i].value;
      const auto& b = body[j].value;
      bool clash = (a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf());
      if (clash && bool_sat(make_and(body[i].guard, body[j].guard))) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> check_well_formed(const Quantity& q) {
  return check_well_formed(q.body);
}

bool is_isolated(const Atom& a, const Var& x) {
  if (!a.lhs.mentions(x) && !a.rhs.mentions(x)) return true;
  if (a.rhs.mentions(x) || !a.lhs.is_finite()) return false;
  const LinExpr& l = a.lhs.lin();
  return l.constant().is_zero() && l.coeffs().size() == 1 && l.coeff(x) == Rational(1);
}

Body to_gnf_body(const Body& body, const Var& x, bool assume_partitioning) {
  Body partitioned;
  const bool ready = assume_partitioning || is_partitioning(body);
  if (!ready) partitioned = make_partitioning(body);
  const Body& base = ready ? body : partitioned;

  Body out;
  for (const auto& t : base) {
    std::vector<Disjunct> ds = to_dnf(t.guard);
    if (ds.empty()) continue;
    for (auto& d : ds) {
      Disjunct iso;
      for (const auto& a : d) {
        Atom b = isolate(a, x);
        if (std::find(iso.begin(), iso.end(), b) == iso.end()) iso.push_back(std::move(b));
      }
      d = std::move(iso);
    }
    out.push_back({from_dnf(ds), t.value});
  }
  if (out.empty()) out.push_back({BoolExpr::truth(true), ExtLinExpr(0)});
  return out;
}

Quantity to_gnf(const Quantity& q, const Var& x) { return {q.prefix, to_gnf_body(q.body, x)}; }

}  // namespace pwlqe
