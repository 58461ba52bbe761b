#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/jet.hpp"

namespace liesym {

struct RandomExprOptions {
  int depth = 3;
  /// Highest jet order drawn as a leaf; 0 keeps expressions on (x, u).
  int max_jet_order = 2;
  bool abstract_functions = true;
  bool transcendental = true;
  std::vector<std::string> parameters{"k1", "k2"};
};

/// Seeded generator of random expressions and vector fields on a jet space.
class ExprGenerator {
 public:
  ExprGenerator(JetSpace space, std::uint64_t seed, RandomExprOptions options = {});

  Expr expression();
  /// Expression in the independent variables and u only.
  Expr point_function();
  VectorField field();
  Rational rational();
  int integer(int low, int high);
  const std::string& variable();
  std::mt19937_64& engine() { return engine_; }

 private:
  Expr node(int depth, int jet_order);
  Expr leaf(int jet_order);
  Expr linear(int jet_order);

  JetSpace space_;
  RandomExprOptions options_;
  std::mt19937_64 engine_;
};

}  // namespace liesym
