#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/zero_test.hpp"

namespace liesym {

class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LinearSolution {
  bool consistent = true;
  std::vector<Expr> unknowns;
  /// Pivot unknown -> expression in the free unknowns.
  ExprMap<Expr> pivots;
  std::vector<Expr> free;
  /// Non-constant pivot coefficients that were divided by.
  std::vector<Expr> assumptions;
  /// A nonzero constant left over when the system is inconsistent.
  Expr inconsistency;

  /// Substitutes the pivots into `e`.
  Expr apply(const Expr& e) const;
};

struct LinearSolveOptions {
  /// Eliminate the last unknowns first (they become pivots).
  bool reverse_order = false;
};

/// Gaussian elimination over the field of rational functions in the
/// remaining symbols. Equations must be linear in `unknowns`.
LinearSolution solve_linear(const std::vector<Expr>& equations, const std::vector<Expr>& unknowns,
                            const AssumptionLedger& ledger = {},
                            const LinearSolveOptions& options = {});

/// Solves e == 0 for `var` when the numerator of e is linear in it, or a
/// perfect square of a linear factor. The leading coefficient must be
/// nonzero; it is returned in `assumption` when not a constant.
struct SingleSolution {
  Expr value;
  Expr assumption;
};
std::optional<SingleSolution> solve_for(const Expr& e, const Expr& var);

}  // namespace liesym
