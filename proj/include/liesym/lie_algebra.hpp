#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "liesym/expr.hpp"
#include "liesym/jet.hpp"
#include "liesym/zero_test.hpp"

namespace Eigen {
template <>
struct NumTraits<liesym::Expr> : GenericNumTraits<liesym::Expr> {
  using Real = liesym::Expr;
  using NonInteger = liesym::Expr;
  using Nested = liesym::Expr;
  using Literal = liesym::Expr;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 64
  };
};
}  // namespace Eigen

namespace liesym {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using ExprMatrix = Eigen::Matrix<Expr, Eigen::Dynamic, Eigen::Dynamic>;
using ExprVector = Eigen::Matrix<Expr, Eigen::Dynamic, 1>;

class LieAlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite-dimensional algebra of vector fields with structure constants
/// [X_i, X_j] = C^k_ij X_k.
struct LieAlgebra {
  JetSpace space;
  std::vector<VectorField> basis;
  std::vector<std::string> names;
  /// constants[i][j][k] = C^k_ij.
  std::vector<std::vector<std::vector<Expr>>> constants;

  std::size_t dimension() const { return basis.size(); }
  bool rational() const;
  /// Rational structure-constant tensor slice: ad(X_i) with entries
  /// (k, j) = C^k_ij, so [X_i, sum_j v_j X_j] = ad(X_i) v.
  RationalMatrix ad(std::size_t i) const;
  /// Bracket of coefficient vectors.
  RationalVector bracket(const RationalVector& a, const RationalVector& b) const;
  /// Text of sum_k C^k_ij X_k, e.g. "-Y3".
  std::string bracket_text(std::size_t i, std::size_t j) const;
};

/// Computes the structure constants; throws LieAlgebraError if a bracket
/// leaves the span or the basis is linearly dependent.
LieAlgebra structure_constants(const JetSpace& space, std::vector<VectorField> basis,
                               std::vector<std::string> names);

/// Max |antisymmetry| and Jacobi violations as exact expressions (zero when
/// consistent).
bool antisymmetric(const LieAlgebra& algebra);
bool satisfies_jacobi(const LieAlgebra& algebra);

struct Identification {
  std::string label;  // "2A1", "A3,3", "A4,5^ab", "3A1xs2A1", "unrecognized"
  std::string latex;
  std::size_t dimension = 0;
  std::size_t derived_dimension = 0;
  std::size_t center_dimension = 0;
  bool derived_abelian = false;
  /// Eigenvalues of v -> [v, e] on the derived algebra for each complement
  /// element e (basis order).
  std::vector<std::vector<Rational>> weights;
  /// (a, b) of A4,5^ab in the normalization a <= b, |a|,|b| <= 1.
  std::optional<std::pair<Rational, Rational>> ab;
  std::string summary() const;
};

Identification identify(const LieAlgebra& algebra);

/// exp(-eps ad X_i): column j holds Ad(exp(eps X_i)) X_j in the basis.
ExprMatrix adjoint_matrix(const LieAlgebra& algebra, std::size_t i, const Expr& eps);

struct AdjointTable {
  Expr eps;
  std::vector<ExprMatrix> matrices;
  /// entry(i, j) as a linear combination of basis names.
  std::string entry_text(const LieAlgebra& algebra, std::size_t i, std::size_t j) const;
};
AdjointTable adjoint(const LieAlgebra& algebra, const Expr& eps = Expr::symbol("eps"));

/// Coefficient symbols a1..an used for generic elements.
std::vector<Expr> coefficient_symbols(std::size_t n, const std::string& prefix = "a");

/// Checks Delta_i(phi) = C^k_ij a_j d(phi)/d(a_k) == 0 for every i.
struct InvariantCheck {
  bool invariant = false;
  std::vector<ZeroVerdict> per_generator;
};
InvariantCheck check_invariant(const LieAlgebra& algebra, const Expr& phi,
                               const std::vector<Expr>& coefficients,
                               const ZeroTestOptions& options = {});

/// One-dimensional subalgebra representative: coefficient vector possibly
/// containing free parameters (alpha, beta), which are taken generic.
struct Representative {
  std::string label;
  std::vector<Expr> coefficients;
};

struct OptimalSystem {
  std::vector<Representative> representatives;
  std::vector<Expr> invariants;  // in coefficient symbols a1..an
};

struct OptimalSystemOptions {
  int trials = 200;
  std::uint64_t seed = 7;
  double tolerance = 1e-9;
  ZeroTestOptions zero;
};

struct Counterexample {
  std::vector<double> vector;
  std::vector<double> normalized;
  std::string reason;
};

struct OptimalSystemReport {
  bool invariants_ok = false;
  std::vector<std::string> invariant_failures;
  bool inequivalence_ok = false;
  std::vector<std::string> inequivalence_notes;
  bool completeness_ok = false;
  int trials = 0;
  std::vector<Counterexample> counterexamples;
  /// Degenerate strata probe (vectors on hyperplanes where a nilpotent
  /// action cannot remove a coefficient).
  std::vector<Counterexample> degenerate_counterexamples;
  bool passed() const { return invariants_ok && inequivalence_ok && completeness_ok; }
};

OptimalSystemReport optimal_system_check(const LieAlgebra& algebra, const OptimalSystem& system,
                                         const OptimalSystemOptions& options = {});

/// Greedy adjoint normalization of a numeric coefficient vector: nilpotent
/// adjoint maps remove coefficients where a linear choice of eps exists.
std::vector<double> normalize_numeric(const LieAlgebra& algebra, std::vector<double> v,
                                      double tolerance = 1e-9);

// Exact linear algebra over Q used by the identification.
std::size_t rank(const RationalMatrix& m);
std::vector<RationalVector> nullspace(const RationalMatrix& m);
/// Coefficients c_0..c_n of det(lambda I - m) = sum c_k lambda^k.
std::vector<Rational> characteristic_polynomial(const RationalMatrix& m);
/// Rational roots with multiplicity; nullopt if the polynomial does not
/// split over Q.
std::optional<std::vector<std::pair<Rational, int>>> rational_roots(
    const std::vector<Rational>& coefficients);
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

}  // namespace liesym
