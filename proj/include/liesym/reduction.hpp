#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/jet.hpp"
#include "liesym/pde.hpp"
#include "liesym/zero_test.hpp"

namespace liesym {

class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invariants of a set of generators: new independent variables as
/// expressions in the original ones, and u = rule(t, x, y, U).
struct SimilarityMap {
  std::vector<Expr> invariants;
  std::vector<std::string> names;
  /// U as a function of the original variables and u (affine in u).
  Expr dependent_invariant;
  Expr rule;
  JetSpace reduced;
  /// Coefficients divided by while solving the characteristic system.
  std::vector<Expr> assumptions;
};

/// Solves the characteristic system one generator at a time. Each
/// generator must act on the current invariants by translations and
/// scalings, and on U affinely.
SimilarityMap invariants_for(const std::vector<VectorField>& fields, const JetSpace& space);

/// Builds a map from user-supplied invariants and a rule affine in U.
SimilarityMap similarity_map(std::vector<Expr> invariants, std::vector<std::string> names,
                             const Expr& rule, const JetSpace& space);

/// X(I) for every generator and invariant, including the dependent one.
std::vector<ZeroVerdict> check_invariants(const SimilarityMap& map,
                                          const std::vector<VectorField>& fields,
                                          const JetSpace& space,
                                          const ZeroTestOptions& options = {});

struct ReducedEquation {
  JetSpace space;
  Expr residual;
  /// Nonzero factors removed from the pulled-back residual.
  std::vector<Expr> cancelled;
};

/// Substitutes u = rule(..., U(invariants)) into the PDE, rewrites it in
/// the new variables and removes common nonzero factors.
ReducedEquation pullback(const Pde& pde, const SimilarityMap& map,
                         const AssumptionLedger& ledger = {});

/// Image of a generator in the reduced variables; throws if it does not
/// project (its action depends on the eliminated variables).
VectorField push_forward(const VectorField& field, const SimilarityMap& map,
                         const JetSpace& space);

/// Wraps a reduced equation as a Pde in the reduced jet space (leading jet is
/// the highest derivative the residual is linear in).
Pde reduced_pde(const Pde& pde, const ReducedEquation& eq);

/// Antiderivative of `e` with respect to a symbol or jet coordinate from a
/// small pattern library; nullopt if no pattern applies.
std::optional<Expr> integrate(const Expr& e, const Expr& var);

/// E with D_v E = e in a one-variable jet space, found by peeling off the
/// highest derivative; nullopt if `e` is not an exact derivative.
std::optional<Expr> jet_antiderivative(const Expr& e, const JetSpace& space);

/// One integration: E + constant.
ReducedEquation integrate_once(const ReducedEquation& eq, const Expr& constant);
/// Two integrations with constants u1 (slope) and u0 (offset); throws
/// ReductionError if the residual is not an exact second derivative.
ReducedEquation integrate_twice(const ReducedEquation& eq);

/// Solves a(s) U' + b(s) = 0 by quadrature: U = u0 - integral of b/a.
std::optional<Expr> solve_first_order(const ReducedEquation& eq, const Expr& constant);

/// dH/ds along solutions of the second-order equation. `primitives` pairs an
/// abstract antiderivative P(U) with its integrand.
struct FirstIntegralCheck {
  bool holds = false;
  Expr derivative;
  ZeroVerdict verdict;
};
FirstIntegralCheck first_integral_check(const ReducedEquation& ode, const Expr& first_integral,
                                        const std::vector<std::pair<Expr, Expr>>& primitives = {},
                                        const ZeroTestOptions& options = {});

enum class SolutionStatus { ZeroIdentically, ZeroGivenConstraints, Nonzero, Undecided };
std::string to_string(SolutionStatus status);

struct SolutionVerdict {
  SolutionStatus status = SolutionStatus::Undecided;
  /// parameter = value, in the order solved.
  std::vector<std::pair<Expr, Expr>> constraints;
  /// Coefficients that were divided by.
  std::vector<Expr> side_conditions;
  Expr residual;
  ZeroVerdict check;
  bool satisfied() const {
    return status == SolutionStatus::ZeroIdentically ||
           status == SolutionStatus::ZeroGivenConstraints;
  }
  std::string summary() const;
};

/// Substitutes a candidate dependent variable (expression in the variables of
/// `space`) into `residual`. When the result is not zero, coefficients of
/// independent monomials are solved for parameters (priority u0, U0, g1, g0,
/// h, u1, alpha1, alpha2, then the rest); ledger members must stay nonzero.
SolutionVerdict check_solution(const Expr& residual, const JetSpace& space, const Expr& candidate,
                               const AssumptionLedger& ledger = {},
                               const ZeroTestOptions& options = {});

/// Residual after substituting the candidate (no constraint solving).
Expr substitute_solution(const Expr& residual, const JetSpace& space, const Expr& candidate);

/// Proportionality of two residuals: returns the factor c with a = c b when
/// it is free of the variables and jets of `space`.
std::optional<Expr> proportional(const Expr& a, const Expr& b, const JetSpace& space,
                                 const AssumptionLedger& ledger = {},
                                 const ZeroTestOptions& options = {});

}  // namespace liesym
