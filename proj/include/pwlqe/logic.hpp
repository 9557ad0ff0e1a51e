#pragma once

#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "pwlqe/syntax.hpp"

namespace pwlqe {

/// A conjunction of atoms; the empty disjunct is true.
using Disjunct = std::vector<Atom>;

bool atom_eval(const Valuation& sigma, const Atom& a);
bool bool_eval(const Valuation& sigma, const BoolExpr& e);
bool disjunct_eval(const Valuation& sigma, const Disjunct& d);

Atom negate_atom(const Atom& a);

/// An atom decided without looking at a valuation.
enum class Folded { True, False, Open };

/// Decides atoms whose truth does not depend on the valuation: atoms without
/// variables (after cancellation) and atoms with an infinite side.
Folded fold_atom_value(const Atom& a);

/// fold_atom_value as a Boolean expression: true, false, or the atom itself.
BoolExpr fold_atom(const Atom& a);

/// Disjunctive normal form with unsatisfiable disjuncts pruned and
/// duplicates removed. An empty result means false.
std::vector<Disjunct> to_dnf(const BoolExpr& e);

/// DNF whose disjuncts are pairwise disjoint. Negated conjunctions expand
/// as !a || (a && !b) || (a && b && !c) and so on.
std::vector<Disjunct> to_disjoint_dnf(const BoolExpr& e);

/// Reads the disjuncts of an expression that is already in DNF shape
/// (an atom, a conjunction of atoms, or a disjunction of those).
std::vector<Disjunct> dnf_disjuncts(const BoolExpr& e);

BoolExpr from_disjunct(const Disjunct& d);
BoolExpr from_dnf(const std::vector<Disjunct>& ds);

/// Rewrites an atom mentioning x into the shape `x ~ b` with x not in b.
/// Atoms in which x does not occur, or cancels, come back x-free.
Atom isolate(const Atom& a, const Var& x);

/// True when some valuation satisfies every atom, decided by repeated
/// Fourier-Motzkin elimination over the rationals.
bool disjunct_sat(const Disjunct& d);
bool bool_sat(const BoolExpr& e);

/// A satisfying valuation defined on the variables of d and on extra_vars,
/// or nothing when d is unsatisfiable.
std::optional<Valuation> fm_witness(const Disjunct& d, const std::set<Var>& extra_vars = {});

/// Conjoins two DNFs pairwise, pruning unsatisfiable products.
std::vector<Disjunct> conjoin_dnf(const std::vector<Disjunct>& a, const std::vector<Disjunct>& b);

/// Appends the atom to every disjunct, pruning the ones that become unsat.
std::vector<Disjunct> conjoin_atom(const std::vector<Disjunct>& ds, const Atom& a);

/// Drops cached satisfiability verdicts of the calling thread.
void clear_sat_cache();

}  // namespace pwlqe
