#pragma once

#include <functional>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "liesym/expr.hpp"

namespace liesym {

using AtomPredicate = std::function<bool(const Expr&)>;

/// Partial derivative with respect to a symbol or jet coordinate.
Expr diff(const Expr& e, const Expr& var);
Expr diff(const Expr& e, const Expr& var, int times);

bool depends_on(const Expr& e, const Expr& atom);
/// True if any Symbol/Jet leaf of `e` satisfies `pred`.
bool depends_on(const Expr& e, const AtomPredicate& pred);

/// Symbols and jet coordinates occurring in `e` (including inside function
/// arguments and exponents).
std::set<Expr, ExprLess> leaf_atoms(const Expr& e);
std::set<Expr, ExprLess> jets_of(const Expr& e);
/// Abstract function applications `name^(k)(arg)` occurring in `e`.
std::set<Expr, ExprLess> function_atoms(const Expr& e);

/// Simultaneous substitution of whole subexpressions (usually leaves).
Expr subs(const Expr& e, const ExprMap<Expr>& replacements);
Expr subs(const Expr& e, const Expr& from, const Expr& to);

/// Replaces every application `name^(k)(arg)` by the k-th derivative of
/// `family` (an expression in `placeholder`) evaluated at `arg`.
Expr substitute_function(const Expr& e, const std::string& name, const Expr& family,
                         const Expr& placeholder);

struct ExpandOptions {
  /// Sums for which this returns true are kept as opaque atoms.
  AtomPredicate keep_sum;
};

/// Distributes products over sums and multiplies out positive integer powers
/// of sums.
Expr expand(const Expr& e, const ExpandOptions& options = {});

/// Expanded numerator and denominator: e == numerator / denominator with the
/// denominator a product of powers of the atoms that appeared with negative
/// integer exponents.
struct Fraction {
  Expr numerator;
  Expr denominator;
};
Fraction to_fraction(const Expr& e, const ExpandOptions& options = {});

/// Canonical quotient form N * D^-1 with common factors of the denominator
/// cancelled. Used for exponents so that equal rational functions of the
/// parameters compare structurally equal.
Expr canonical_rational(const Expr& e);

/// Exact division of expanded polynomials over the atoms they contain.
std::optional<Expr> divide_exact(const Expr& numerator, const Expr& divisor);

/// Coefficients of `e` as a polynomial in the `basis` atoms. The key is the
/// basis monomial (1 for the constant part, which is always present).
ExprMap<Expr> collect(const Expr& e, const std::vector<Expr>& basis);

/// Splits an expanded expression by its factors that depend on atoms
/// selected by `is_variable`. Keys are the variable-dependent monomials,
/// values the coefficients free of them.
ExprMap<Expr> split_by(const Expr& e, const AtomPredicate& is_variable,
                       const ExpandOptions& options = {});

/// Factored view of a sum: for each variable monomial, the list of
/// variable-free factors common to all contributions and the remaining sum.
struct FactoredCoefficient {
  std::vector<Expr> common;
  Expr remainder;
  Expr value() const;
};
ExprMap<FactoredCoefficient> split_factored(const Expr& e, const AtomPredicate& is_variable,
                                            const ExpandOptions& options = {});

/// Polynomial degree of `e` in `var` after expansion, or nullopt if `e` is
/// not polynomial in it.
std::optional<int> polynomial_degree(const Expr& e, const Expr& var);

/// Terms of a canonical sum (a single term for non-sums).
std::vector<Expr> terms_of(const Expr& e);
/// Factors of a canonical product (a single factor for non-products).
std::vector<Expr> factors_of(const Expr& e);

}  // namespace liesym
