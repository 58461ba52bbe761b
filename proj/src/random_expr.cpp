#include "liesym/random_expr.hpp"

#include <utility>

namespace liesym {

ExprGenerator::ExprGenerator(JetSpace space, std::uint64_t seed, RandomExprOptions options)
    : space_(std::move(space)), options_(std::move(options)), engine_(seed) {}

int ExprGenerator::integer(int low, int high) {
  return std::uniform_int_distribution<int>(low, high)(engine_);
}

Rational ExprGenerator::rational() {
  int numerator = integer(-4, 4);
  if (numerator == 0) numerator = 1;
  return Rational(numerator, integer(1, 3));
}

const std::string& ExprGenerator::variable() {
  return space_.variables.at(
      static_cast<std::size_t>(integer(0, static_cast<int>(space_.dimension()) - 1)));
}

Expr ExprGenerator::leaf(int jet_order) {
  switch (integer(0, 6)) {
    case 0:
      return Expr(rational());
    case 1:
    case 2:
      return Expr::symbol(variable());
    case 3:
      return space_.coordinate({});
    case 4:
      if (jet_order > 0) {
        MultiIndex index;
        const int order = integer(1, jet_order);
        for (int i = 0; i < order; ++i) index.push_back(variable());
        return space_.coordinate(make_index(index));
      }
      return space_.coordinate({});
    case 5:
      if (!options_.parameters.empty()) {
        const auto pick = static_cast<std::size_t>(
            integer(0, static_cast<int>(options_.parameters.size()) - 1));
        return Expr::symbol(options_.parameters[pick]);
      }
      return Expr(rational());
    default:
      if (options_.abstract_functions) {
        return Expr::func(integer(0, 1) == 0 ? "f" : "g", 0, space_.coordinate({}));
      }
      return Expr::symbol(variable());
  }
}

Expr ExprGenerator::linear(int jet_order) {
  return Expr(rational()) * leaf(jet_order) + Expr(rational());
}

Expr ExprGenerator::node(int depth, int jet_order) {
  if (depth <= 0) return leaf(jet_order);
  const int choice = integer(0, options_.transcendental ? 7 : 4);
  switch (choice) {
    case 0:
    case 1:
      return node(depth - 1, jet_order) + node(depth - 1, jet_order);
    case 2:
    case 3:
      return node(depth - 1, jet_order) * node(depth - 1, jet_order);
    case 4:
      return pow(node(depth - 1, jet_order), Expr(static_cast<long>(integer(2, 3))));
    case 5:
      return exp(linear(jet_order) / Expr(4));
    case 6: {
      const Expr base = leaf(jet_order);
      return log(Expr(1) + base * base);
    }
    default: {
      const Expr base = leaf(jet_order);
      return Expr(1) / (Expr(1) + base * base);
    }
  }
}

Expr ExprGenerator::expression() { return node(options_.depth, options_.max_jet_order); }

Expr ExprGenerator::point_function() { return node(options_.depth - 1, 0); }

VectorField ExprGenerator::field() {
  std::vector<Expr> xi;
  for (std::size_t i = 0; i < space_.dimension(); ++i) xi.push_back(point_function());
  return {std::move(xi), point_function()};
}

}  // namespace liesym
