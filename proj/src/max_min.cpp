// Pointwise maximum and minimum of partitioning bodies.
//
// The output has one summand per tuple (j1, ..., jn) of summand choices and
// winning position i, guarded by the chosen guards together with
//   a_i > a_k  for k < i   and   a_i >= a_k  for k > i
// (relations flipped for the minimum), so position i is the first one that
// attains the extremum. Tuples are found by a depth-first search that keeps
// a running winner: position k takes over from the current winner b exactly
// when a_k > a_b, which reaches every satisfiable (tuple, i) pair without
// enumerating the unsatisfiable ones. The emitted guard is the full
// conjunction above, not the search path.

#include <algorithm>
#include <optional>

#include "pwlqe/errors.hpp"
#include "pwlqe/normalform.hpp"
#include "pwlqe/qelim.hpp"
#include "sat_engine.hpp"

namespace pwlqe {

namespace {

/// A conjunction of atoms together with disjunctions that are not yet split.
/// Each pending disjunction keeps only the disjuncts consistent with conj;
/// one with a single survivor is merged into conj.
struct Region {
  detail::IdSet conj;
  std::vector<std::vector<detail::IdSet>> pending;
};

/// Restores the invariant after conj has grown; false when some pending
/// disjunction lost all its disjuncts.
bool settle(Region& r) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t j = 0; j < r.pending.size();) {
      auto& options = r.pending[j];
      std::vector<detail::IdSet> alive;
      for (const auto& d : options)
        if (detail::sat_merge(r.conj, d)) alive.push_back(d);
      if (alive.empty()) return false;
      if (alive.size() == 1) {
        r.conj = detail::merge(r.conj, alive.front());
        r.pending.erase(r.pending.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        continue;
      }
      options = std::move(alive);
      ++j;
    }
  }
  return true;
}

/// Whether conj can be extended by one disjunct from every pending entry.
bool consistent(const detail::IdSet& conj, const std::vector<std::vector<detail::IdSet>>& pending) {
  for (std::size_t j = 0; j < pending.size(); ++j) {
    const auto& options = pending[j];
    bool covered = std::any_of(options.begin(), options.end(),
                               [&](const detail::IdSet& d) { return detail::model_satisfies(conj, d); });
    if (covered) continue;
    for (const auto& d : options)
      if (auto next = detail::sat_merge(conj, d); next && consistent(*next, pending)) return true;
    return false;
  }
  return true;
}

std::optional<Region> with_dnf(const Region& r, const std::vector<detail::IdSet>& dnf) {
  Region out = r;
  if (dnf.size() == 1) {
    auto next = detail::sat_merge(r.conj, dnf.front());
    if (!next) return std::nullopt;
    out.conj = std::move(*next);
  } else {
    out.pending.push_back(dnf);
  }
  if (!settle(out) || !consistent(out.conj, out.pending)) return std::nullopt;
  return out;
}

std::optional<Region> with_atom(const Region& r, detail::AtomId id) {
  if (id == detail::kFalseAtom) return std::nullopt;
  if (id == detail::kTrueAtom) return r;
  return with_dnf(r, {detail::IdSet{id}});
}

class Extremum {
 public:
  Extremum(const std::vector<Body>& bodies, bool is_max) : bodies_(bodies), max_(is_max) {
    for (const auto& b : bodies) {
      std::vector<std::vector<detail::IdSet>> per_term;
      for (const auto& t : b) per_term.push_back(detail::to_ids(to_dnf(t.guard)));
      dnfs_.push_back(std::move(per_term));
    }
  }

  Body run() {
    if (bodies_.empty()) return {{BoolExpr::truth(true), max_ ? ExtLinExpr::neg_inf() : ExtLinExpr::pos_inf()}};
    choice_.assign(bodies_.size(), 0);
    search(0, 0, Region{});
    if (out_.empty()) out_.push_back({BoolExpr::truth(true), ExtLinExpr(0)});
    return std::move(out_);
  }

 private:
  const ExtLinExpr& value(std::size_t k, std::size_t j) const { return bodies_[k][j].value; }

  /// The winner relation: `a beats b` (strictly better) or `a holds b`.
  Atom beats(const ExtLinExpr& a, const ExtLinExpr& b) const { return {a, max_ ? Rel::Gt : Rel::Lt, b}; }
  Atom holds(const ExtLinExpr& a, const ExtLinExpr& b) const { return {a, max_ ? Rel::Ge : Rel::Le, b}; }

  void search(std::size_t k, std::size_t best, const Region& region) {
    if (k == bodies_.size()) {
      emit(best);
      return;
    }
    for (std::size_t j = 0; j < bodies_[k].size(); ++j) {
      if (dnfs_[k][j].empty()) continue;
      auto here = with_dnf(region, dnfs_[k][j]);
      if (!here) continue;
      choice_[k] = j;
      if (k == 0) {
        search(1, 0, *here);
        continue;
      }
      const ExtLinExpr& cur = value(best, choice_[best]);
      const ExtLinExpr& cand = value(k, j);
      if (auto take = with_atom(*here, detail::intern(beats(cand, cur)))) search(k + 1, k, *take);
      if (auto keep = with_atom(*here, detail::intern(holds(cur, cand)))) search(k + 1, best, *keep);
    }
  }

  void emit(std::size_t i) {
    std::vector<std::size_t> key = choice_;
    key.push_back(i);
    if (!seen_.insert(std::move(key)).second) return;

    std::vector<BoolExpr> parts;
    for (std::size_t k = 0; k < bodies_.size(); ++k) parts.push_back(bodies_[k][choice_[k]].guard);
    const ExtLinExpr& ai = value(i, choice_[i]);
    for (std::size_t k = 0; k < bodies_.size(); ++k) {
      if (k == i) continue;
      const ExtLinExpr& ak = value(k, choice_[k]);
      parts.push_back(fold_atom(k < i ? beats(ai, ak) : holds(ai, ak)));
    }
    out_.push_back({make_and(std::move(parts)), ai});
  }

  const std::vector<Body>& bodies_;
  bool max_;
  detail::IdScope scope_;
  std::vector<std::vector<std::vector<detail::IdSet>>> dnfs_;
  std::vector<std::size_t> choice_;
  std::set<std::vector<std::size_t>> seen_;
  Body out_;
};

void require_partitioning(const std::vector<Body>& bodies) {
  for (std::size_t k = 0; k < bodies.size(); ++k)
    if (!is_partitioning(bodies[k])) throw NotPartitioning("argument " + std::to_string(k + 1) + " is not partitioning");
}

}  // namespace

Body max_of_unchecked(const std::vector<Body>& bodies) { return Extremum(bodies, true).run(); }

Body min_of_unchecked(const std::vector<Body>& bodies) { return Extremum(bodies, false).run(); }

Body max_of(const std::vector<Body>& bodies) {
  require_partitioning(bodies);
  return max_of_unchecked(bodies);
}

Body min_of(const std::vector<Body>& bodies) {
  require_partitioning(bodies);
  return min_of_unchecked(bodies);
}

}  // namespace pwlqe
