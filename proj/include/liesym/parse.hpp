#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "liesym/expr.hpp"

namespace liesym {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t column)
      : std::runtime_error(message + " at column " + std::to_string(column + 1)),
        column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

struct ParseOptions {
  /// Independent variable names; jet suffixes are split against these.
  std::vector<std::string> variables{"t", "x", "y", "xi", "sigma", "zeta"};
  /// Dependent variable names; `u` parses as the order-0 jet coordinate.
  std::vector<std::string> dependents{"u", "U"};
  /// Names parsed as abstract one-argument functions (with optional primes).
  std::vector<std::string> functions{"f", "g"};
  /// Handler for `Dt(e)`, `Dx(e)`, `Dy(e)`; total derivatives are rejected
  /// when unset.
  std::function<Expr(const Expr&, const std::string&)> total_derivative;
};

/// Parses the text expression grammar: rationals, identifiers, jets
/// (`u_tx`), `+ - * / ^`, `exp ln sqrt`, abstract functions `f(..)`,
/// `g''(..)`, total derivatives `Dt Dx Dy` and partials `d(e, v)`.
Expr parse(std::string_view text, const ParseOptions& options = {});

/// Splits a jet suffix such as "txx" into variables, longest names first.
std::vector<std::string> split_jet_suffix(std::string_view suffix,
                                          const std::vector<std::string>& variables);

}  // namespace liesym
