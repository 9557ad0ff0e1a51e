// Satisfiability of arbitrary Boolean combinations of linear atoms.
//
// A case split on atoms that never builds a DNF. The branch keeps the set of
// literals chosen so far; the formula is evaluated three-valued against it
// and the search splits on an undecided atom, preferring atoms that occur
// often. A branch dies as soon as its literals are jointly unsatisfiable, and
// is accepted early when the model stored for them satisfies the formula.

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "pwlqe/logic.hpp"
#include "sat_engine.hpp"

namespace pwlqe {

namespace {

using detail::AtomId;
using detail::IdSet;
using K = BoolExpr::Kind;

enum class Tri { False, True, Open };

Tri flip(Tri t, bool neg) {
  if (t == Tri::Open || !neg) return t;
  return t == Tri::True ? Tri::False : Tri::True;
}

/// The two literals of an atom occurrence.
struct Lit {
  AtomId pos;
  AtomId neg;
};

}  // namespace

namespace detail {

struct FormulaSet::Impl {
  IdScope scope;
  explicit Impl(std::vector<BoolExpr> fs) : formulas(std::move(fs)) {
    // Atom ids stay valid while `scope` lives.
    for (const auto& f : formulas) collect(f);
  }

  bool run(const std::vector<Clause>& chosen) {
    clauses = chosen;
    return search({});
  }

  void collect(const BoolExpr& e) {
    if (e.kind() == K::Atom) {
      if (lits.count(&e)) return;
      Lit l{intern(e.as_atom()), intern(negate_atom(e.as_atom()))};
      lits.emplace(&e, l);
      ++freq[std::min(l.pos, l.neg)];
      return;
    }
    for (const auto& c : e.children()) collect(c);
  }

  static bool has(const IdSet& s, AtomId id) { return std::binary_search(s.begin(), s.end(), id); }

  Tri atom_value(const Lit& l, const IdSet& conj) const {
    if (l.pos == kTrueAtom || l.neg == kFalseAtom || has(conj, l.pos)) return Tri::True;
    if (l.pos == kFalseAtom || l.neg == kTrueAtom || has(conj, l.neg)) return Tri::False;
    return Tri::Open;
  }

  /// Three-valued value under the literals in conj; records the undecided
  /// atoms met on the way.
  Tri eval(const BoolExpr& e, bool neg, const IdSet& conj, std::vector<const Lit*>& open) const {
    switch (e.kind()) {
      case K::True:
        return flip(Tri::True, neg);
      case K::False:
        return flip(Tri::False, neg);
      case K::Atom: {
        const Lit& l = lits.at(&e);
        Tri v = atom_value(l, conj);
        if (v == Tri::Open) open.push_back(&l);
        return flip(v, neg);
      }
      case K::Not:
        return eval(e.children().front(), !neg, conj, open);
      case K::And:
      case K::Or:
        break;
    }
    const bool conjunctive = (e.kind() == K::And) != neg;
    const Tri stop = conjunctive ? Tri::False : Tri::True;
    Tri out = conjunctive ? Tri::True : Tri::False;
    for (const auto& c : e.children()) {
      Tri v = eval(c, neg, conj, open);
      if (v == stop) return stop;
      if (v == Tri::Open) out = Tri::Open;
    }
    return out;
  }

  /// Truth at the model stored for conj; false when there is none.
  bool holds_at_model(const BoolExpr& e, bool neg, const IdSet& conj) const {
    switch (e.kind()) {
      case K::True:
        return !neg;
      case K::False:
        return neg;
      case K::Atom: {
        const Lit& l = lits.at(&e);
        return model_holds(conj, neg ? l.neg : l.pos);
      }
      case K::Not:
        return holds_at_model(e.children().front(), !neg, conj);
      case K::And:
      case K::Or:
        break;
    }
    auto test = [&](const BoolExpr& c) { return holds_at_model(c, neg, conj); };
    const auto& kids = e.children();
    const bool conjunctive = (e.kind() == K::And) != neg;
    return conjunctive ? std::all_of(kids.begin(), kids.end(), test) : std::any_of(kids.begin(), kids.end(), test);
  }

  Tri eval_clause(const Clause& c, const IdSet& conj, std::vector<const Lit*>& open) const {
    Tri out = Tri::False;
    for (const auto& [i, neg] : c) {
      Tri v = eval(formulas[i], neg, conj, open);
      if (v == Tri::True) return v;
      if (v == Tri::Open) out = v;
    }
    return out;
  }

  Tri eval_clauses(const IdSet& conj, std::vector<const Lit*>& open) const {
    Tri out = Tri::True;
    for (const auto& c : clauses) {
      Tri v = eval_clause(c, conj, open);
      if (v == Tri::False) return v;
      if (v == Tri::Open) out = v;
    }
    return out;
  }

  bool clause_at_model(const Clause& c, const IdSet& conj) const {
    return std::any_of(c.begin(), c.end(), [&](const auto& p) { return holds_at_model(formulas[p.first], p.second, conj); });
  }

  bool search(const IdSet& conj) {
    std::vector<const Lit*> open;
    Tri v = eval_clauses(conj, open);
    if (v != Tri::Open) return v == Tri::True;
    if (std::all_of(clauses.begin(), clauses.end(), [&](const Clause& c) { return clause_at_model(c, conj); }))
      return true;

    const Lit* pick = open.front();
    for (const Lit* l : open)
      if (freq[std::min(l->pos, l->neg)] > freq[std::min(pick->pos, pick->neg)]) pick = l;
    for (AtomId id : {pick->pos, pick->neg}) {
      IdSet next = conj;
      insert_id(next, id);
      if (sat_ids(next) && search(next)) return true;
    }
    return false;
  }

  std::vector<BoolExpr> formulas;
  std::vector<Clause> clauses;
  std::unordered_map<const BoolExpr*, Lit> lits;
  std::unordered_map<AtomId, int> freq;
};

FormulaSet::FormulaSet(std::vector<BoolExpr> formulas) : impl_(std::make_unique<Impl>(std::move(formulas))) {}

FormulaSet::~FormulaSet() = default;

bool FormulaSet::sat(const std::vector<Clause>& clauses) { return impl_->run(clauses); }

}  // namespace detail

bool bool_sat(const BoolExpr& e) { return detail::FormulaSet({e}).sat({{{0, false}}}); }

}  // namespace pwlqe
