#pragma once

#include <optional>
#include <utility>

#include "pwlqe/syntax.hpp"

namespace pwlqe {

/// Splits the body into regions by enumerating which guards hold. Each
/// output guard is the conjunction of the chosen guards and negated ones;
/// its value is the sum of the chosen values (0 when none is chosen).
/// Unsatisfiable combinations are dropped.
Body make_partitioning(const Body& body);

/// Exactly one guard holds at every valuation.
bool is_partitioning(const Body& body);

/// First pair (i, j), i < j, of overlapping terms valued oo and -oo.
std::optional<std::pair<std::size_t, std::size_t>> check_well_formed(const Body& body);
std::optional<std::pair<std::size_t, std::size_t>> check_well_formed(const Quantity& q);

/// Guarded normal form with respect to x: partitioning body, guards in DNF,
/// every atom mentioning x of the shape `x ~ b`.
Quantity to_gnf(const Quantity& q, const Var& x);

/// The body part of to_gnf. With assume_partitioning the partition check is
/// skipped.
Body to_gnf_body(const Body& body, const Var& x, bool assume_partitioning = false);

/// True when every atom mentioning x has the shape `x ~ b` with x not in b.
bool is_isolated(const Atom& a, const Var& x);

}  // namespace pwlqe
