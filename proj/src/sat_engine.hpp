#pragma once

// Interned atoms and a memoized satisfiability check on sets of them.
//
// Each distinct atom gets a small integer id on first sight, together with
// its constraint form. A conjunction is then a sorted vector of ids, which
// makes merging, deduplication and cache lookups cheap. Tables are per
// thread. Ids stay valid while an IdScope is alive on the thread; outside of
// any scope the tables may be trimmed when they grow large.

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "pwlqe/logic.hpp"

namespace pwlqe::detail {

using AtomId = int;
using IdSet = std::vector<AtomId>;  // sorted, unique

constexpr AtomId kTrueAtom = -1;
constexpr AtomId kFalseAtom = -2;

/// Id of the atom, or kTrueAtom / kFalseAtom when it folds to a constant.
AtomId intern(const Atom& a);
const Atom& atom_of(AtomId id);

/// Ids of a disjunct; nothing when some atom folds to false.
std::optional<IdSet> intern_all(const Disjunct& d);

bool sat_ids(const IdSet& ids);

/// The union of a and b when it is satisfiable.
std::optional<IdSet> sat_merge(const IdSet& a, const IdSet& b);

/// Whether the stored model of the satisfiable set `known` satisfies ids.
/// False when no model is at hand, which proves nothing.
bool model_satisfies(const IdSet& known, const IdSet& ids);

/// Whether the atom holds at the stored model of the satisfiable set
/// `known`. False when no model is at hand.
bool model_holds(const IdSet& known, AtomId id);

/// Union of two sorted id sets.
IdSet merge(const IdSet& a, const IdSet& b);

/// Adds one id; returns false (leaving out untouched) for kFalseAtom.
bool insert_id(IdSet& set, AtomId id);

std::vector<IdSet> conjoin_ids(const std::vector<IdSet>& a, const std::vector<IdSet>& b);
std::vector<IdSet> conjoin_id(const std::vector<IdSet>& a, AtomId id);

/// Converts a DNF into id form, dropping disjuncts with false atoms.
std::vector<IdSet> to_ids(const std::vector<Disjunct>& ds);
Disjunct to_atoms(const IdSet& ids);

/// Satisfiability of conjunctions of clauses over the given formulas, where
/// a clause is a disjunction of formulas, each taken as is or negated. Atoms
/// are interned once for all queries, which keeps many queries over shared
/// guards cheap.
class FormulaSet {
 public:
  /// Pairs of formula index and whether to negate it.
  using Clause = std::vector<std::pair<std::size_t, bool>>;

  explicit FormulaSet(std::vector<BoolExpr> formulas);
  ~FormulaSet();
  FormulaSet(const FormulaSet&) = delete;
  FormulaSet& operator=(const FormulaSet&) = delete;

  bool sat(const std::vector<Clause>& clauses);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class IdScope {
 public:
  IdScope();
  ~IdScope();
  IdScope(const IdScope&) = delete;
  IdScope& operator=(const IdScope&) = delete;
};

}  // namespace pwlqe::detail
