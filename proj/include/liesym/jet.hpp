#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "liesym/expr.hpp"
#include "liesym/parse.hpp"

namespace liesym {

class JetSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Independent variables, one dependent variable and a bound on jet order.
struct JetSpace {
  std::vector<std::string> variables{"t", "x"};
  std::string dependent = "u";
  int max_order = 5;

  static JetSpace plane() { return {{"t", "x"}, "u", 5}; }
  static JetSpace space() { return {{"t", "x", "y"}, "u", 5}; }

  Expr variable(std::size_t i) const { return Expr::symbol(variables.at(i)); }
  Expr coordinate(const MultiIndex& index) const;
  std::size_t dimension() const { return variables.size(); }
  bool has_variable(const std::string& v) const;
  /// Parse options that resolve jets, Dt/Dx/Dy in this space.
  ParseOptions parse_options() const;
};

Expr total_derivative(const Expr& e, const std::string& var, const JetSpace& space);
Expr total_derivative(const Expr& e, const MultiIndex& index, const JetSpace& space);

/// X = sum_i xi^i d/dx^i + eta d/du with components functions of (x, u).
struct VectorField {
  std::vector<Expr> xi;
  Expr eta;

  VectorField() = default;
  VectorField(std::vector<Expr> xi_components, Expr eta_component)
      : xi(std::move(xi_components)), eta(std::move(eta_component)) {}
  static VectorField zero(std::size_t dimension);

  /// Components in order (xi..., eta).
  std::vector<Expr> components() const;
  bool is_zero() const;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(const Expr& c, const VectorField& a);
bool operator==(const VectorField& a, const VectorField& b);

/// Parses "xi_t; xi_x[; xi_y]; eta".
VectorField parse_vector_field(std::string_view text, const JetSpace& space);
std::string to_text(const VectorField& field);
/// Operator form such as "t*d_t + x*d_x + alpha1*u*d_u".
std::string operator_text(const VectorField& field, const JetSpace& space);
std::string operator_latex(const VectorField& field, const JetSpace& space);

/// Action of X on a function of (x, u) only.
Expr apply(const VectorField& field, const Expr& fn, const JetSpace& space);

/// [X, Y] with components X(Y^k) - Y(X^k).
VectorField commutator(const VectorField& a, const VectorField& b, const JetSpace& space);

/// Prolonged field: eta^J for every multi-index up to the requested order
/// (eta^{} is eta itself).
struct ProlongedField {
  VectorField base;
  std::map<MultiIndex, Expr> eta;

  const Expr& coefficient(const MultiIndex& index) const;
};

ProlongedField prolong(const VectorField& field, int order, const JetSpace& space);
/// Prolongation restricted to the given multi-indices and what they need.
ProlongedField prolong_for(const VectorField& field, const std::vector<MultiIndex>& indices,
                           const JetSpace& space);

/// pr X applied to an expression on the jet space. Requires every jet in
/// `e` to have a coefficient in `field`.
Expr apply(const ProlongedField& field, const Expr& e, const JetSpace& space);

/// Canonical jet name such as "u_tx" (plain "u" for the empty index).
std::string jet_key(const MultiIndex& index, const JetSpace& space);
nlohmann::json to_json(const ProlongedField& field, const JetSpace& space);

}  // namespace liesym
