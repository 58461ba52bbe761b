#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "liesym/expr.hpp"
#include "liesym/zero_test.hpp"

// Numerical stand-ins used as independent references: nothing here goes
// through jets, prolongation or the residual the library builds.
namespace oracle {

using Point = std::array<double, 3>;  // t, x, y
using Function = std::function<double(const Point&)>;

struct Zoomeron {
  /// Mixed derivative u_xs uses s = t when true and s = y otherwise.
  bool plane = true;
  std::function<double(double)> f;
  std::function<double(double)> g;
};

inline double second_order(const Function& u, int a, int b, const Point& p, double h) {
  auto at = [&](double da, double db) {
    Point q = p;
    q[static_cast<std::size_t>(a)] += da;
    q[static_cast<std::size_t>(b)] += db;
    return u(q);
  };
  if (a == b) return (at(h, 0) - 2 * u(p) + at(-h, 0)) / (h * h);
  return (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
}

/// Fourth-order accurate second derivative by Richardson extrapolation.
inline double second(const Function& u, int a, int b, const Point& p, double h) {
  return (4 * second_order(u, a, b, p, h) - second_order(u, a, b, p, 2 * h)) / 3;
}

struct Sample {
  double value = 0;
  /// Sum of the magnitudes of the three terms.
  double scale = 0;
  /// Rounding error the nested stencils can produce at this point.
  double noise = 0;
};

/// Residual of (u_xs/f)_tt - (u_xs/f)_xx + 2 (g(u))_xt by nested central
/// differences.
inline Sample residual(const Zoomeron& eq, const Function& u, const Point& p, double inner = 1e-3,
                       double outer = 1e-2) {
  const int s = eq.plane ? 0 : 2;
  const Function w = [&](const Point& q) { return second(u, 1, s, q, inner) / eq.f(u(q)); };
  const Function g = [&](const Point& q) { return eq.g(u(q)); };
  const double w_tt = second(w, 0, 0, p, outer);
  const double w_xx = second(w, 1, 1, p, outer);
  const double g_xt = second(g, 1, 0, p, outer);
  const double eps = std::numeric_limits<double>::epsilon();
  const double spread = 100 * eps / (outer * outer);
  Sample out;
  out.value = w_tt - w_xx + 2 * g_xt;
  out.scale = std::abs(w_tt) + std::abs(w_xx) + 2 * std::abs(g_xt);
  out.noise = spread * (std::abs(u(p) / eq.f(u(p))) / (inner * inner) + std::abs(w(p)) + std::abs(g(p)));
  return out;
}

/// Evaluates an expression in t, x, y and named parameters.
inline Function numeric(const liesym::Expr& e, const std::map<std::string, double>& parameters) {
  return [e, parameters](const Point& p) {
    liesym::NumericPoint point;
    point.leaves[liesym::Expr::symbol("t")] = p[0];
    point.leaves[liesym::Expr::symbol("x")] = p[1];
    point.leaves[liesym::Expr::symbol("y")] = p[2];
    for (const auto& [name, value] : parameters) point.leaves[liesym::Expr::symbol(name)] = value;
    return liesym::evaluate(e, point);
  };
}

/// f or g given as an expression in the jet coordinate `u`.
inline std::function<double(double)> of_u(const liesym::Expr& e, const liesym::Expr& u,
                                          const std::map<std::string, double>& parameters) {
  return [e, u, parameters](double value) {
    liesym::NumericPoint point;
    point.leaves[u] = value;
    for (const auto& [name, v] : parameters) point.leaves[liesym::Expr::symbol(name)] = v;
    return liesym::evaluate(e, point);
  };
}

}  // namespace oracle
