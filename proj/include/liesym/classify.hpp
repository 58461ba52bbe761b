#pragma once

#include <string>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/jet.hpp"
#include "liesym/lie_algebra.hpp"
#include "liesym/pde.hpp"

namespace liesym {

/// Affine ansatz: xi^k = c_k0 + sum_j c_kj x_j, eta = c_uu u + c_u0.
struct Ansatz {
  VectorField field;
  std::vector<Expr> unknowns;
};
Ansatz affine_ansatz(const JetSpace& space);

/// Name of the weight symbol attached to the u-scaling (alpha1) and the
/// u-shift (alpha2) parts of an extra generator.
Expr scaling_weight();
Expr shift_weight();

struct ClassificationBranch {
  /// "generic", "power", "log", "exponential", "linear" or "raw".
  std::string family;
  Expr g;
  /// Unsolved condition on g when the family is "raw" (h = g').
  Expr condition;
  /// Exponent m of g = g0 + g1 u^m or g = g0 + g1 exp(m u).
  Expr exponent;
  /// Weight values fixed by the branch, e.g. alpha1 = 2/(1 - K).
  std::vector<std::pair<Expr, Expr>> constraints;
  std::vector<VectorField> generators;
  std::vector<std::string> names;
  Identification algebra;
  std::vector<SymmetryVerdict> verdicts;
  std::vector<Expr> assumptions;

  bool verified() const;
};

struct Classification {
  std::string pde;
  Expr f;
  Ansatz ansatz;
  /// Nonzero conditions on parameters used while solving (e.g. K, 1 + K).
  std::vector<Expr> assumptions;
  std::vector<ClassificationBranch> branches;
};

/// Replaces g in the residual by a concrete expression in u.
Pde with_g(const Pde& pde, const Expr& g);

/// Classifies point symmetries of `pde` (concrete f, abstract or concrete g)
/// under the affine ansatz.
Classification classify(const Pde& pde, const ZeroTestOptions& options = {});

}  // namespace liesym
