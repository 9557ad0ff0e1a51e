#pragma once

#include <cstddef>
#include <vector>

#include "pwlqe/logic.hpp"
#include "pwlqe/syntax.hpp"

namespace pwlqe {

/// Bounds on x read off a disjunct in GNF. Lists keep first-occurrence order;
/// the defaults -oo and oo come last in the non-strict lists.
struct BoundSets {
  std::vector<ExtLinExpr> strict_upper;
  std::vector<ExtLinExpr> nonstrict_upper;
  std::vector<ExtLinExpr> strict_lower;
  std::vector<ExtLinExpr> nonstrict_lower;

  /// strict_upper followed by nonstrict_upper.
  std::vector<ExtLinExpr> upper() const;
  /// strict_lower followed by nonstrict_lower.
  std::vector<ExtLinExpr> lower() const;
};

/// Throws NotIsolated when an atom mentions x outside the shape `x ~ b`.
BoundSets bounds(const Disjunct& d, const Var& x);

/// Fourier-Motzkin residue: holds exactly when some rational x satisfies d.
BoolExpr phi_exists(const Disjunct& d, const Var& x);

/// Selects upper bound i (0-based) as the least one, ties going to the
/// smallest index. Throws IndexOutOfRange.
BoolExpr phi_sup(const BoundSets& b, std::size_t i);

/// Selects lower bound i (0-based) as the greatest one, ties going to the
/// smallest index. Throws IndexOutOfRange.
BoolExpr phi_inf(const BoundSets& b, std::size_t i);

/// e with x replaced by a; if a is infinite, the result is the infinity
/// that the sign of x's coefficient dictates.
ExtLinExpr subst_inf(const ExtLinExpr& e, const Var& x, const ExtLinExpr& a);

/// sup (or inf) over x of the value e restricted to d; -oo (oo) outside d.
/// The result is partitioning.
Body elim_disjunct(Quantifier q, const Disjunct& d, const ExtLinExpr& e, const Var& x);

/// Pointwise maximum of partitioning bodies. Throws NotPartitioning.
Body max_of(const std::vector<Body>& bodies);
/// Pointwise minimum of partitioning bodies. Throws NotPartitioning.
Body min_of(const std::vector<Body>& bodies);

/// As max_of and min_of, without checking the inputs.
Body max_of_unchecked(const std::vector<Body>& bodies);
Body min_of_unchecked(const std::vector<Body>& bodies);

struct ElimOptions {
  bool simplify = false;
  /// Worker threads for the per-disjunct eliminations.
  unsigned jobs = 1;
  /// Re-check well-formedness after every round.
  bool check_invariants = false;
};

/// Eliminates one quantifier from a body in GNF with respect to x.
Body elim_one(Quantifier q, const Var& x, const Body& gnf_body, const ElimOptions& opts = {});

/// Eliminates all quantifiers, innermost first. Throws
/// WellFormednessViolation on ill-formed input.
Quantity elim(const Quantity& q, const ElimOptions& opts = {});

/// Semantics-preserving cleanup that keeps the body partitioning: drops
/// unsatisfiable terms, merges terms with equal values and tidies guards.
Body simplify(const Body& body);

std::size_t width(const Body& b);
std::size_t depth(const Body& b);
std::size_t width(const Quantity& q);
std::size_t depth(const Quantity& q);
std::size_t atom_count(const BoolExpr& e);

}  // namespace pwlqe
