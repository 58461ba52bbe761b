#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/jet.hpp"
#include "liesym/zero_test.hpp"

namespace liesym {

class PdeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scalar PDE H = 0 of the generalized Zoomeron type
///   (u_xs / f(u))_tt - c (u_xs / f(u))_xx + 2 d (g(u))_xt = 0,
/// with s = t on the plane and s = y in 2+1 dimensions. The residual is
/// stored multiplied by f^3, which clears all denominators.
struct Pde {
  std::string name;
  JetSpace space;
  Expr f;
  Expr g;
  Expr residual;
  /// Highest-order jet; the residual is linear in it.
  Expr leading;
  AssumptionLedger ledger;
};

/// f and g are expressions in the jet coordinate u; abstract functions are
/// written f(u), g(u).
Pde make_gze1(const Expr& f, const Expr& g);
Pde make_gze2(const Expr& f, const Expr& g);
Pde make_zoomeron(const JetSpace& space, const Expr& f, const Expr& g, const Expr& xx_coefficient,
                  const Expr& g_coefficient, std::string name);

/// Presets: "gze1", "gze2" (abstract f, g), "zoomeron_1+1" (f = u, g = u^2),
/// "zoomeron_2+1", "g_zoomeron_2+1" (f = u, c = k^2, d = alpha, g = u^(2n)).
Pde make_preset(const std::string& name);
std::vector<std::string> preset_names();

Expr abstract_f();
Expr abstract_g();
Expr u_coordinate();

struct DeterminingSystem {
  /// pr X(H) with the leading jet replaced by -B/A, times A^degree.
  Expr numerator;
  /// Multiplier lambda with A^d pr X(H) - numerator = lambda H.
  Expr multiplier;
  int degree = 1;
  /// Coefficients of the jet monomials of `numerator`.
  std::vector<Expr> monomials;
  std::vector<Expr> equations;
};

DeterminingSystem determining_equations(const Pde& pde, const VectorField& field);

struct FailedEquation {
  Expr monomial;
  Expr coefficient;
  ZeroVerdict verdict;
};

struct SymmetryVerdict {
  ZeroStatus status = ZeroStatus::Undecided;
  std::vector<FailedEquation> failures;
  std::size_t equation_count = 0;
  bool passed() const { return status == ZeroStatus::IdenticallyZero; }
};

/// Passes iff every determining equation is identically zero under the
/// ledger.
SymmetryVerdict verify_symmetry(const Pde& pde, const VectorField& field,
                                const AssumptionLedger& ledger = {},
                                const ZeroTestOptions& options = {});

/// Multiplier reconstruction check: A^d pr X(H) - numerator - lambda H == 0.
ZeroVerdict check_reconstruction(const Pde& pde, const VectorField& field,
                                 const DeterminingSystem& system,
                                 const ZeroTestOptions& options = {});

}  // namespace liesym
