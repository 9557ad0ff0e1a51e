#include "pwlqe/logic.hpp"

#include <algorithm>

#include "pwlqe/errors.hpp"
#include "sat_engine.hpp"

namespace pwlqe {

namespace {

bool rel_holds(Rel r, std::strong_ordering c) {
  switch (r) {
    case Rel::Lt:
      return c < 0;
    case Rel::Le:
      return c <= 0;
    case Rel::Gt:
      return c > 0;
    case Rel::Ge:
      return c >= 0;
  }
  return false;
}

int kind_rank(const ExtLinExpr& e) {
  if (e.is_neg_inf()) return -1;
  if (e.is_pos_inf()) return 1;
  return 0;
}

}  // namespace

bool atom_eval(const Valuation& sigma, const Atom& a) {
  return rel_holds(a.rel, ext_cmp(lin_eval(sigma, a.lhs), lin_eval(sigma, a.rhs)));
}

bool bool_eval(const Valuation& sigma, const BoolExpr& e) {
  using K = BoolExpr::Kind;
  switch (e.kind()) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Atom:
      return atom_eval(sigma, e.as_atom());
    case K::Not:
      return !bool_eval(sigma, e.children().front());
    case K::And:
      return std::all_of(e.children().begin(), e.children().end(),
                         [&](const BoolExpr& c) { return bool_eval(sigma, c); });
    case K::Or:
      return std::any_of(e.children().begin(), e.children().end(),
                         [&](const BoolExpr& c) { return bool_eval(sigma, c); });
  }
  return false;
}

bool disjunct_eval(const Valuation& sigma, const Disjunct& d) {
  return std::all_of(d.begin(), d.end(), [&](const Atom& a) { return atom_eval(sigma, a); });
}

Atom negate_atom(const Atom& a) { return {a.lhs, complement(a.rel), a.rhs}; }

Folded fold_atom_value(const Atom& a) {
  auto verdict = [](bool b) { return b ? Folded::True : Folded::False; };
  if (!a.lhs.is_finite() || !a.rhs.is_finite())
    return verdict(rel_holds(a.rel, kind_rank(a.lhs) <=> kind_rank(a.rhs)));
  LinExpr diff = a.lhs.lin() - a.rhs.lin();
  if (!diff.is_constant()) return Folded::Open;
  return verdict(rel_holds(a.rel, diff.constant() <=> Rational(0)));
}

BoolExpr fold_atom(const Atom& a) {
  switch (fold_atom_value(a)) {
    case Folded::True:
      return BoolExpr::truth(true);
    case Folded::False:
      return BoolExpr::truth(false);
    case Folded::Open:
      break;
  }
  return BoolExpr::atom(a);
}

// ---------------------------------------------------------------------------
// Normal forms

namespace {

using detail::AtomId;
using detail::IdSet;

/// A disjunct under construction: atom ids in first-occurrence order, and
/// the same ids sorted for merging, deduplication and the sat cache.
struct Term {
  std::vector<AtomId> order;
  IdSet ids;
};

using Terms = std::vector<Term>;

Terms truth_terms(bool value) { return value ? Terms{Term{}} : Terms{}; }

Terms atom_terms(const Atom& a, bool negated) {
  AtomId id = detail::intern(negated ? negate_atom(a) : a);
  if (id == detail::kFalseAtom) return {};
  if (id == detail::kTrueAtom) return {Term{}};
  return {Term{{id}, {id}}};
}

Terms dedup(Terms ts) {
  std::set<IdSet> seen;
  Terms out;
  out.reserve(ts.size());
  for (auto& t : ts)
    if (seen.insert(t.ids).second) out.push_back(std::move(t));
  return out;
}

Terms conjoin(const Terms& a, const Terms& b) {
  Terms out;
  for (const auto& ta : a) {
    for (const auto& tb : b) {
      auto ids = detail::sat_merge(ta.ids, tb.ids);
      if (!ids) continue;
      Term m{ta.order, std::move(*ids)};
      for (auto id : tb.order)
        if (!std::binary_search(ta.ids.begin(), ta.ids.end(), id)) m.order.push_back(id);
      out.push_back(std::move(m));
    }
  }
  return dedup(std::move(out));
}

Terms dnf_rec(const BoolExpr& e, bool negated) {
  using K = BoolExpr::Kind;
  switch (e.kind()) {
    case K::True:
      return truth_terms(!negated);
    case K::False:
      return truth_terms(negated);
    case K::Atom:
      return atom_terms(e.as_atom(), negated);
    case K::Not:
      return dnf_rec(e.children().front(), !negated);
    case K::And:
    case K::Or:
      break;
  }
  const bool conjunctive = (e.kind() == K::And) != negated;
  if (conjunctive) {
    Terms acc{Term{}};
    for (const auto& c : e.children()) {
      acc = conjoin(acc, dnf_rec(c, negated));
      if (acc.empty()) break;
    }
    return acc;
  }
  Terms acc;
  for (const auto& c : e.children()) {
    auto part = dnf_rec(c, negated);
    acc.insert(acc.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return dedup(std::move(acc));
}

Terms disjoint_rec(const BoolExpr& e, bool negated) {
  using K = BoolExpr::Kind;
  switch (e.kind()) {
    case K::True:
    case K::False:
    case K::Atom:
      return dnf_rec(e, negated);
    case K::Not:
      return disjoint_rec(e.children().front(), !negated);
    case K::And:
    case K::Or:
      break;
  }
  const bool conjunctive = (e.kind() == K::And) != negated;
  if (conjunctive) {
    Terms acc{Term{}};
    for (const auto& c : e.children()) {
      acc = conjoin(acc, disjoint_rec(c, negated));
      if (acc.empty()) break;
    }
    return acc;
  }
  // c1 || (!c1 && c2) || (!c1 && !c2 && c3) ...
  Terms out;
  Terms none_before{Term{}};
  for (const auto& c : e.children()) {
    auto here = conjoin(none_before, disjoint_rec(c, negated));
    out.insert(out.end(), std::make_move_iterator(here.begin()), std::make_move_iterator(here.end()));
    none_before = conjoin(none_before, disjoint_rec(c, !negated));
    if (none_before.empty()) break;
  }
  return out;
}

Terms terms_of(const std::vector<Disjunct>& ds) {
  Terms out;
  for (const auto& d : ds) {
    Term t;
    bool alive = true;
    for (const auto& a : d) {
      AtomId id = detail::intern(a);
      if (id == detail::kFalseAtom) {
        alive = false;
        break;
      }
      if (id == detail::kTrueAtom || std::binary_search(t.ids.begin(), t.ids.end(), id)) continue;
      t.order.push_back(id);
      detail::insert_id(t.ids, id);
    }
    if (alive) out.push_back(std::move(t));
  }
  return out;
}

std::vector<Disjunct> disjuncts_of(const Terms& ts) {
  std::vector<Disjunct> out;
  out.reserve(ts.size());
  for (const auto& t : ts) {
    Disjunct d;
    d.reserve(t.order.size());
    for (auto id : t.order) d.push_back(detail::atom_of(id));
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

std::vector<Disjunct> conjoin_dnf(const std::vector<Disjunct>& a, const std::vector<Disjunct>& b) {
  detail::IdScope scope;
  return disjuncts_of(conjoin(terms_of(a), terms_of(b)));
}

std::vector<Disjunct> conjoin_atom(const std::vector<Disjunct>& ds, const Atom& a) {
  detail::IdScope scope;
  AtomId id = detail::intern(a);
  if (id == detail::kFalseAtom) return {};
  if (id == detail::kTrueAtom) return ds;
  Terms out;
  for (const auto& t : terms_of(ds)) {
    if (std::binary_search(t.ids.begin(), t.ids.end(), id)) {
      out.push_back(t);
      continue;
    }
    auto ids = detail::sat_merge(t.ids, {id});
    if (!ids) continue;
    Term m{t.order, std::move(*ids)};
    m.order.push_back(id);
    out.push_back(std::move(m));
  }
  return disjuncts_of(out);
}

std::vector<Disjunct> to_dnf(const BoolExpr& e) {
  detail::IdScope scope;
  return disjuncts_of(dnf_rec(e, false));
}

std::vector<Disjunct> to_disjoint_dnf(const BoolExpr& e) {
  detail::IdScope scope;
  return disjuncts_of(disjoint_rec(e, false));
}

std::vector<Disjunct> dnf_disjuncts(const BoolExpr& e) {
  using K = BoolExpr::Kind;
  auto conj = [](const BoolExpr& c, Disjunct& out) {
    if (c.kind() == K::Atom) {
      out.push_back(c.as_atom());
      return true;
    }
    if (c.kind() == K::True) return true;
    if (c.kind() != K::And) return false;
    for (const auto& g : c.children()) {
      if (g.kind() != K::Atom) return false;
      out.push_back(g.as_atom());
    }
    return true;
  };
  if (e.kind() == K::False) return {};
  std::vector<Disjunct> out;
  if (e.kind() == K::Or) {
    for (const auto& c : e.children()) {
      Disjunct d;
      if (!conj(c, d)) return to_dnf(e);
      out.push_back(std::move(d));
    }
    return out;
  }
  Disjunct d;
  if (!conj(e, d)) return to_dnf(e);
  out.push_back(std::move(d));
  return out;
}

BoolExpr from_disjunct(const Disjunct& d) {
  std::vector<BoolExpr> parts;
  parts.reserve(d.size());
  for (const auto& a : d) parts.push_back(BoolExpr::atom(a));
  return make_and(std::move(parts));
}

BoolExpr from_dnf(const std::vector<Disjunct>& ds) {
  std::vector<BoolExpr> parts;
  parts.reserve(ds.size());
  for (const auto& d : ds) parts.push_back(from_disjunct(d));
  return make_or(std::move(parts));
}

// ---------------------------------------------------------------------------
// Isolation

Atom isolate(const Atom& input, const Var& x) {
  if (!input.lhs.mentions(x) && !input.rhs.mentions(x)) return input;
  Atom a = input;
  if (!a.lhs.is_finite() && a.rhs.is_finite()) a = {a.rhs, flip(a.rel), a.lhs};

  if (!a.rhs.is_finite()) {
    if (!a.lhs.is_finite()) return a;
    Rational c = a.lhs.coeff(x);
    if (c.is_zero()) return a;
    if (c.sign() > 0) return {LinExpr::var(x), a.rel, a.rhs};
    return {LinExpr::var(x), flip(a.rel), a.rhs.negated()};
  }

  LinExpr diff = a.lhs.lin() - a.rhs.lin();
  Rational c = diff.coeff(x);
  if (c.is_zero()) {
    if (!a.lhs.mentions(x)) return a;
    return {a.lhs.lin().without(x), a.rel, a.rhs.lin().without(x)};
  }
  LinExpr bound = (Rational(-1) / c) * diff.without(x);
  Rel rel = c.sign() > 0 ? a.rel : flip(a.rel);
  return {LinExpr::var(x), rel, bound};
}

}  // namespace pwlqe
