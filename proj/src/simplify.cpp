#include <algorithm>
#include <map>

#include "pwlqe/logic.hpp"
#include "pwlqe/qelim.hpp"
#include "sat_engine.hpp"

namespace pwlqe {

namespace {

/// Canonical key of an atom for comparing literals up to scaling: the
/// difference of the two sides scaled so the first coefficient is +-1 and
/// the relation reoriented to > or >=.
struct AtomKey {
  ExtLinExpr diff;
  bool strict = false;
  bool constant = false;
  Atom atom;

  friend bool operator==(const AtomKey& a, const AtomKey& b) {
    if (a.constant || b.constant) return a.constant && b.constant && a.atom == b.atom;
    return a.diff == b.diff && a.strict == b.strict;
  }
};

AtomKey key_of(const Atom& a) {
  AtomKey k;
  k.atom = a;
  if (!a.lhs.is_finite() || !a.rhs.is_finite()) {
    k.constant = true;
    return k;
  }
  bool up = a.rel == Rel::Gt || a.rel == Rel::Ge;
  LinExpr d = up ? a.lhs.lin() - a.rhs.lin() : a.rhs.lin() - a.lhs.lin();
  if (!d.is_constant()) d *= Rational(1) / abs(d.coeffs().begin()->second);
  k.diff = ExtLinExpr(std::move(d));
  k.strict = is_strict(a.rel);
  return k;
}

bool contains(const Disjunct& d, const Atom& a) {
  AtomKey k = key_of(a);
  return std::any_of(d.begin(), d.end(), [&](const Atom& b) { return key_of(b) == k; });
}

bool subset(const Disjunct& small, const Disjunct& big) {
  return std::all_of(small.begin(), small.end(), [&](const Atom& a) { return contains(big, a); });
}

using detail::IdSet;
using Region = std::vector<IdSet>;

IdSet ids_of(const Disjunct& d) {
  IdSet out;
  for (const auto& a : d) detail::insert_id(out, detail::intern(a));
  return out;
}

Disjunct drop_redundant(Disjunct d) {
  for (std::size_t i = 0; i < d.size();) {
    Disjunct rest = d;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    IdSet ids = ids_of(rest);
    if (!detail::insert_id(ids, detail::intern(negate_atom(d[i]))) || !detail::sat_ids(ids))
      d.erase(d.begin() + static_cast<std::ptrdiff_t>(i));
    else ++i;
  }
  return d;
}

bool overlaps_any(const Disjunct& d, const std::vector<Region>& others) {
  IdSet ids = ids_of(d);
  for (const auto& o : others)
    for (const auto& c : o)
      if (detail::sat_merge(ids, c)) return true;
  return false;
}

/// Widens each disjunct by dropping atoms as long as it stays clear of the
/// other groups' regions, then removes subsumed disjuncts. In a partitioning
/// body the complement of the other regions is exactly this group's region,
/// so the guard keeps its meaning.
std::vector<Disjunct> tidy_dnf(std::vector<Disjunct> ds, const std::vector<Region>& others) {
  for (auto& d : ds) {
    d = drop_redundant(std::move(d));
    for (std::size_t i = 0; i < d.size();) {
      Disjunct wider = d;
      wider.erase(wider.begin() + static_cast<std::ptrdiff_t>(i));
      if (!overlaps_any(wider, others)) d = std::move(wider);
      else ++i;
    }
  }
  std::vector<Disjunct> out;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    bool subsumed = false;
    for (std::size_t j = 0; j < ds.size() && !subsumed; ++j) {
      if (i == j || !subset(ds[j], ds[i])) continue;
      // Equal disjuncts: keep the first.
      subsumed = !subset(ds[i], ds[j]) || j < i;
    }
    if (!subsumed) out.push_back(ds[i]);
  }
  return out;
}

/// Rewrites an atom whose sides share a variable as `vars rel constant`.
Atom tidy_atom(const Atom& a) {
  if (!a.lhs.is_finite() || !a.rhs.is_finite()) return a;
  const LinExpr& l = a.lhs.lin();
  const LinExpr& r = a.rhs.lin();
  bool shared = std::any_of(l.coeffs().begin(), l.coeffs().end(), [&](const auto& kv) { return r.mentions(kv.first); });
  if (!shared) return a;
  LinExpr d = l - r;
  Rational k = -d.constant();
  d.add_constant(k);
  return {ExtLinExpr(std::move(d)), a.rel, ExtLinExpr(LinExpr(k))};
}

}  // namespace

Body simplify(const Body& body) {
  detail::IdScope scope;
  std::vector<ExtLinExpr> values;
  std::map<ExtLinExpr, std::vector<Disjunct>> groups;
  for (const auto& t : body) {
    auto ds = to_dnf(t.guard);
    if (ds.empty()) continue;
    for (auto& d : ds)
      for (auto& a : d) a = tidy_atom(a);
    auto [it, inserted] = groups.try_emplace(t.value);
    if (inserted) values.push_back(t.value);
    it->second.insert(it->second.end(), ds.begin(), ds.end());
  }

  Body out;
  for (const auto& v : values) {
    std::vector<Region> others;
    for (const auto& w : values) {
      if (w == v) continue;
      Region r;
      for (const auto& d : groups[w]) r.push_back(ids_of(d));
      others.push_back(std::move(r));
    }
    out.push_back({from_dnf(tidy_dnf(groups[v], others)), v});
  }
  if (out.empty()) out.push_back({BoolExpr::truth(true), ExtLinExpr(0)});
  return out;
}

}  // namespace pwlqe
