// Satisfiability of conjunctions of linear atoms over the rationals.
//
// Atoms become constraints  sum c_i*v_i + k > 0  (or >= 0). Variables are
// eliminated in lexicographic order by pairing every lower bound with every
// upper bound; after each round, constraints are scaled so the first nonzero
// coefficient has magnitude 1 and parallel constraints keep only the tightest
// representative.

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>

#include "pwlqe/logic.hpp"
#include "sat_engine.hpp"

namespace pwlqe {

namespace {

struct Constraint {
  std::vector<Rational> coef;  // indexed like System::vars
  Rational k;
  bool strict = false;

  bool constant() const {
    for (const auto& c : coef)
      if (!c.is_zero()) return false;
    return true;
  }

  bool constant_holds() const { return strict ? k.sign() > 0 : k.sign() >= 0; }
};

struct System {
  std::vector<Var> vars;
  std::vector<Constraint> rows;
  bool infeasible = false;
};

void scale(Constraint& c, const Rational& q) {
  for (auto& v : c.coef) v *= q;
  c.k *= q;
}

void normalize(Constraint& c) {
  for (const auto& v : c.coef) {
    if (v.is_zero()) continue;
    if (v != Rational(1) && v != Rational(-1)) scale(c, Rational(1) / abs(v));
    return;
  }
}

/// Keeps, among constraints with equal coefficient vectors, the tightest one;
/// drops constant constraints that hold and flags the system on one that fails.
void tidy(System& s) {
  std::map<std::vector<Rational>, std::size_t> index;
  std::vector<Constraint> kept;
  for (auto& c : s.rows) {
    if (c.constant()) {
      if (!c.constant_holds()) {
        s.infeasible = true;
        s.rows.clear();
        return;
      }
      continue;
    }
    normalize(c);
    auto [it, inserted] = index.emplace(c.coef, kept.size());
    if (inserted) {
      kept.push_back(std::move(c));
      continue;
    }
    Constraint& old = kept[it->second];
    if (c.k < old.k || (c.k == old.k && c.strict && !old.strict)) old = std::move(c);
  }
  s.rows = std::move(kept);
}

/// Builds the constraint system, or reports a folded-false atom as infeasible.
System build(const Disjunct& d, const std::set<Var>& extra = {}) {
  System s;
  std::set<Var> vs = extra;
  for (const auto& a : d) vs.merge(free_vars(a));
  s.vars.assign(vs.begin(), vs.end());
  std::map<Var, std::size_t> pos;
  for (std::size_t i = 0; i < s.vars.size(); ++i) pos[s.vars[i]] = i;

  for (const auto& a : d) {
    switch (fold_atom_value(a)) {
      case Folded::True:
        continue;
      case Folded::False:
        s.infeasible = true;
        s.rows.clear();
        return s;
      case Folded::Open:
        break;
    }
    // Both sides are finite once the atom is open.
    bool upward = a.rel == Rel::Gt || a.rel == Rel::Ge;
    LinExpr diff = upward ? a.lhs.lin() - a.rhs.lin() : a.rhs.lin() - a.lhs.lin();
    Constraint c;
    c.coef.assign(s.vars.size(), Rational(0));
    for (const auto& [v, q] : diff.coeffs()) c.coef[pos[v]] = q;
    c.k = diff.constant();
    c.strict = is_strict(a.rel);
    s.rows.push_back(std::move(c));
  }
  tidy(s);
  return s;
}

/// One Fourier-Motzkin round removing variable column i.
void eliminate(System& s, std::size_t i) {
  std::vector<Constraint> lower, upper, rest;
  for (auto& c : s.rows) {
    int sg = c.coef[i].sign();
    if (sg > 0) lower.push_back(std::move(c));
    else if (sg < 0) upper.push_back(std::move(c));
    else rest.push_back(std::move(c));
  }
  for (const auto& lo : lower) {
    for (const auto& up : upper) {
      Constraint c = lo;
      scale(c, Rational(1) / lo.coef[i]);
      Constraint u = up;
      scale(u, Rational(1) / abs(up.coef[i]));
      for (std::size_t j = 0; j < c.coef.size(); ++j) c.coef[j] += u.coef[j];
      c.coef[i] = 0;
      c.k += u.k;
      c.strict = lo.strict || up.strict;
      rest.push_back(std::move(c));
    }
  }
  s.rows = std::move(rest);
  tidy(s);
}

}  // namespace

namespace {

/// A point satisfying the system, by elimination followed by back-substitution.
std::optional<std::vector<Rational>> solve(System s) {
  if (s.infeasible) return std::nullopt;
  std::vector<std::vector<Constraint>> stages;
  for (std::size_t i = 0; i < s.vars.size(); ++i) {
    stages.push_back(s.rows);
    eliminate(s, i);
    if (s.infeasible) return std::nullopt;
  }

  std::vector<Rational> value(s.vars.size(), Rational(0));
  for (std::size_t i = s.vars.size(); i-- > 0;) {
    // Feasibility of the later stages guarantees lo <= hi, with equality
    // only between non-strict bounds.
    std::optional<Rational> lo, hi;
    for (const auto& c : stages[i]) {
      const Rational& a = c.coef[i];
      if (a.is_zero()) continue;
      Rational r = c.k;
      for (std::size_t j = i + 1; j < c.coef.size(); ++j) r += c.coef[j] * value[j];
      Rational b = -r / a;
      if (a.sign() > 0) {
        if (!lo || b > *lo) lo = b;
      } else if (!hi || b < *hi) {
        hi = b;
      }
    }
    if (lo && hi) value[i] = (*lo == *hi) ? *lo : (*lo + *hi) / Rational(2);
    else if (lo) value[i] = *lo + Rational(1);
    else if (hi) value[i] = *hi - Rational(1);
  }
  return value;
}

// ---------------------------------------------------------------------------
// Interned atoms

struct Row {
  std::vector<std::pair<int, Rational>> coef;  // by global variable id
  Rational k;
  bool strict = false;
};

std::size_t hash_rational(const Rational& r) {
  const mpq_class& q = r.raw();
  std::size_t h = static_cast<std::size_t>(mpz_getlimbn(q.get_num_mpz_t(), 0));
  h ^= static_cast<std::size_t>(mpz_sgn(q.get_num_mpz_t()) + 2) * 0x9e3779b97f4a7c15ULL;
  h = h * 31 + static_cast<std::size_t>(mpz_getlimbn(q.get_den_mpz_t(), 0));
  return h;
}

std::size_t hash_lin(const ExtLinExpr& e) {
  std::size_t h = static_cast<std::size_t>(e.kind()) * 1000003;
  if (!e.is_finite()) return h;
  h ^= hash_rational(e.lin().constant());
  for (const auto& [v, c] : e.lin().coeffs()) {
    h = h * 1099511628211ULL ^ std::hash<std::string>{}(v);
    h = h * 1099511628211ULL ^ hash_rational(c);
  }
  return h;
}

struct AtomHash {
  std::size_t operator()(const Atom& a) const {
    return (hash_lin(a.lhs) * 31 + static_cast<std::size_t>(a.rel)) * 1000000007ULL ^ hash_lin(a.rhs);
  }
};

struct IdSetHash {
  std::size_t operator()(const detail::IdSet& ids) const {
    std::size_t h = ids.size();
    for (auto id : ids) h = h * 1000003 ^ static_cast<std::size_t>(id);
    return h;
  }
};

/// Cached verdict; a satisfiable set keeps a model indexed by variable id.
struct Entry {
  bool sat = false;
  std::vector<Rational> point;
};

struct Tables {
  std::unordered_map<Atom, detail::AtomId, AtomHash> ids;
  std::vector<Atom> atoms;
  std::vector<Row> rows;
  std::unordered_map<std::string, int> var_ids;
  std::vector<std::string> var_names;
  std::unordered_map<detail::IdSet, Entry, IdSetHash> cache;
  // Minimal unsatisfiable subsets, filed under their smallest id.
  std::unordered_map<detail::AtomId, std::vector<detail::IdSet>> cores;
  int depth = 0;

  void clear() {
    ids.clear();
    atoms.clear();
    rows.clear();
    var_ids.clear();
    var_names.clear();
    cache.clear();
    cores.clear();
  }
};

constexpr std::size_t kAtomLimit = 1 << 19;
constexpr std::size_t kCacheLimit = 1 << 18;

Tables& tables() {
  thread_local Tables t;
  return t;
}

void maybe_trim(Tables& t) {
  if (t.cache.size() > kCacheLimit) t.cache.clear();
  if (t.depth == 0 && t.atoms.size() > kAtomLimit) t.clear();
}

int var_id(Tables& t, const std::string& v) {
  auto [it, inserted] = t.var_ids.emplace(v, static_cast<int>(t.var_names.size()));
  if (inserted) t.var_names.push_back(v);
  return it->second;
}

System system_of(Tables& t, const detail::IdSet& ids, std::vector<int>& used) {
  used.clear();
  for (auto id : ids)
    for (const auto& [v, c] : t.rows[static_cast<std::size_t>(id)].coef) used.push_back(v);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  // Elimination order is lexicographic in the variable names.
  std::sort(used.begin(), used.end(), [&](int a, int b) { return t.var_names[a] < t.var_names[b]; });

  System s;
  std::unordered_map<int, std::size_t> col;
  for (std::size_t i = 0; i < used.size(); ++i) {
    s.vars.push_back(t.var_names[static_cast<std::size_t>(used[i])]);
    col[used[i]] = i;
  }
  for (auto id : ids) {
    const Row& r = t.rows[static_cast<std::size_t>(id)];
    Constraint c;
    c.coef.assign(used.size(), Rational(0));
    for (const auto& [v, q] : r.coef) c.coef[col[v]] = q;
    c.k = r.k;
    c.strict = r.strict;
    s.rows.push_back(std::move(c));
  }
  tidy(s);
  return s;
}

bool feasible(Tables& t, const detail::IdSet& ids) {
  std::vector<int> used;
  System s = system_of(t, ids, used);
  for (std::size_t i = 0; i < s.vars.size() && !s.infeasible && !s.rows.empty(); ++i) eliminate(s, i);
  return !s.infeasible;
}

bool known_unsat(const Tables& t, const detail::IdSet& ids) {
  for (auto id : ids) {
    auto it = t.cores.find(id);
    if (it == t.cores.end()) continue;
    for (const auto& core : it->second)
      if (std::includes(ids.begin(), ids.end(), core.begin(), core.end())) return true;
  }
  return false;
}

/// Shrinks an unsatisfiable set to a minimal one and records it.
void learn_core(Tables& t, detail::IdSet ids) {
  for (std::size_t i = 0; i < ids.size();) {
    detail::IdSet smaller = ids;
    smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
    if (!feasible(t, smaller)) ids = std::move(smaller);
    else ++i;
  }
  if (!ids.empty()) t.cores[ids.front()].push_back(std::move(ids));
}

Entry solve_rows(Tables& t, const detail::IdSet& ids) {
  Entry e;
  if (known_unsat(t, ids)) return e;
  std::vector<int> used;
  System s = system_of(t, ids, used);
  auto value = solve(std::move(s));
  if (!value) {
    learn_core(t, ids);
    return e;
  }
  e.sat = true;
  e.point.assign(t.var_names.size(), Rational(0));
  for (std::size_t i = 0; i < used.size(); ++i) e.point[static_cast<std::size_t>(used[i])] = (*value)[i];
  return e;
}

bool row_holds(const Row& r, const std::vector<Rational>& point) {
  Rational sum = r.k;
  for (const auto& [v, q] : r.coef)
    if (static_cast<std::size_t>(v) < point.size()) sum += q * point[static_cast<std::size_t>(v)];
  return r.strict ? sum.sign() > 0 : sum.sign() >= 0;
}

/// Model of a cached satisfiable set that also satisfies all of ids, if any.
const Entry* model_for(Tables& t, const detail::IdSet& ids, const detail::IdSet& known) {
  auto it = t.cache.find(known);
  if (it == t.cache.end() || !it->second.sat) return nullptr;
  for (auto id : ids)
    if (!row_holds(t.rows[static_cast<std::size_t>(id)], it->second.point)) return nullptr;
  return &it->second;
}

const Entry& lookup(Tables& t, const detail::IdSet& ids, std::initializer_list<const detail::IdSet*> hints) {
  if (auto it = t.cache.find(ids); it != t.cache.end()) return it->second;
  if (t.cache.size() > kCacheLimit) t.cache.clear();
  for (const auto* h : hints) {
    if (const Entry* e = model_for(t, ids, *h)) {
      Entry copy = *e;
      return t.cache.emplace(ids, std::move(copy)).first->second;
    }
  }
  return t.cache.emplace(ids, solve_rows(t, ids)).first->second;
}

}  // namespace

namespace detail {

IdScope::IdScope() {
  Tables& t = tables();
  maybe_trim(t);
  ++t.depth;
}

IdScope::~IdScope() { --tables().depth; }

AtomId intern(const Atom& a) {
  switch (fold_atom_value(a)) {
    case Folded::True:
      return kTrueAtom;
    case Folded::False:
      return kFalseAtom;
    case Folded::Open:
      break;
  }
  Tables& t = tables();
  auto it = t.ids.find(a);
  if (it != t.ids.end()) return it->second;

  bool upward = a.rel == Rel::Gt || a.rel == Rel::Ge;
  LinExpr diff = upward ? a.lhs.lin() - a.rhs.lin() : a.rhs.lin() - a.lhs.lin();
  Row row;
  for (const auto& [v, q] : diff.coeffs()) row.coef.emplace_back(var_id(t, v), q);
  std::sort(row.coef.begin(), row.coef.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  row.k = diff.constant();
  row.strict = is_strict(a.rel);

  auto id = static_cast<AtomId>(t.atoms.size());
  t.atoms.push_back(a);
  t.rows.push_back(std::move(row));
  t.ids.emplace(a, id);
  return id;
}

const Atom& atom_of(AtomId id) { return tables().atoms[static_cast<std::size_t>(id)]; }

bool insert_id(IdSet& set, AtomId id) {
  if (id == kFalseAtom) return false;
  if (id == kTrueAtom) return true;
  auto pos = std::lower_bound(set.begin(), set.end(), id);
  if (pos == set.end() || *pos != id) set.insert(pos, id);
  return true;
}

std::optional<IdSet> intern_all(const Disjunct& d) {
  IdSet out;
  out.reserve(d.size());
  for (const auto& a : d)
    if (!insert_id(out, intern(a))) return std::nullopt;
  return out;
}

bool sat_ids(const IdSet& ids) { return lookup(tables(), ids, {}).sat; }

std::optional<IdSet> sat_merge(const IdSet& a, const IdSet& b) {
  IdSet m = merge(a, b);
  if (!lookup(tables(), m, {&a, &b}).sat) return std::nullopt;
  return m;
}

bool model_satisfies(const IdSet& known, const IdSet& ids) { return model_for(tables(), ids, known) != nullptr; }

bool model_holds(const IdSet& known, AtomId id) {
  if (id == kTrueAtom) return true;
  if (id == kFalseAtom) return false;
  Tables& t = tables();
  auto it = t.cache.find(known);
  return it != t.cache.end() && it->second.sat && row_holds(t.rows[static_cast<std::size_t>(id)], it->second.point);
}

IdSet merge(const IdSet& a, const IdSet& b) {
  IdSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

namespace {

std::vector<IdSet> unique_sets(std::vector<IdSet> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<IdSet> conjoin_ids(const std::vector<IdSet>& a, const std::vector<IdSet>& b) {
  std::vector<IdSet> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      IdSet m = merge(x, y);
      if (lookup(tables(), m, {&x, &y}).sat) out.push_back(std::move(m));
    }
  return unique_sets(std::move(out));
}

std::vector<IdSet> conjoin_id(const std::vector<IdSet>& a, AtomId id) {
  if (id == kFalseAtom) return {};
  if (id == kTrueAtom) return a;
  std::vector<IdSet> out;
  for (const auto& x : a) {
    IdSet m = x;
    insert_id(m, id);
    if (lookup(tables(), m, {&x}).sat) out.push_back(std::move(m));
  }
  return unique_sets(std::move(out));
}

std::vector<IdSet> to_ids(const std::vector<Disjunct>& ds) {
  std::vector<IdSet> out;
  for (const auto& d : ds)
    if (auto ids = intern_all(d)) out.push_back(std::move(*ids));
  return unique_sets(std::move(out));
}

Disjunct to_atoms(const IdSet& ids) {
  Disjunct d;
  d.reserve(ids.size());
  for (auto id : ids) d.push_back(atom_of(id));
  return d;
}

}  // namespace detail

void clear_sat_cache() {
  Tables& t = tables();
  t.cache.clear();
  if (t.depth == 0) t.clear();
}

bool disjunct_sat(const Disjunct& d) {
  if (d.empty()) return true;
  detail::IdScope scope;
  auto ids = detail::intern_all(d);
  return ids && detail::sat_ids(*ids);
}

std::optional<Valuation> fm_witness(const Disjunct& d, const std::set<Var>& extra_vars) {
  System s = build(d, extra_vars);
  auto value = solve(s);
  if (!value) return std::nullopt;
  Valuation sigma;
  for (std::size_t i = 0; i < s.vars.size(); ++i) sigma[s.vars[i]] = (*value)[i];
  return sigma;
}

}  // namespace pwlqe
