#pragma once

#include <optional>

#include "pwlqe/errors.hpp"
#include "pwlqe/qelim.hpp"
#include "pwlqe/syntax.hpp"

namespace pwlqe {

struct EntailResult {
  bool holds = true;
  /// A valuation with value(f) > value(g) when the entailment fails.
  std::optional<Valuation> witness;
};

/// Decides f |= g, i.e. value(f) <= value(g) at every valuation.
EntailResult entails(const Quantity& f, const Quantity& g, const ElimOptions& opts = {});

class NotEntailed : public Error {
 public:
  explicit NotEntailed(Valuation witness)
      : Error("the first quantity does not entail the second"), witness_(std::move(witness)) {}

  const Valuation& witness() const { return witness_; }

 private:
  Valuation witness_;
};

/// sup over the variables free in f only, applied to f. Throws NotEntailed.
Quantity strongest_interpolant(const Quantity& f, const Quantity& g, const ElimOptions& opts = {});

/// inf over the variables free in g only, applied to g. Throws NotEntailed.
Quantity weakest_interpolant(const Quantity& f, const Quantity& g, const ElimOptions& opts = {});

}  // namespace pwlqe
