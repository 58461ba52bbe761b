#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "liesym/catalog.hpp"
#include "liesym/pde.hpp"
#include "liesym/reduction.hpp"
#include "liesym/render.hpp"
#include "oracle.hpp"

namespace liesym {
namespace {

Expr P(const std::string& text, const JetSpace& space) { return parse(text, space.parse_options()); }

bool free_of_variables(const Expr& e, const JetSpace& space) {
  for (const auto& v : space.variables) {
    if (depends_on(canonical_rational(e), Expr::symbol(v))) return false;
  }
  return true;
}

TEST(Invariants, TravellingWave) {
  const JetSpace plane = JetSpace::plane();
  const SimilarityMap map = invariants_for({parse_vector_field("1; a; 0", plane)}, plane);
  ASSERT_EQ(map.invariants.size(), 1u);
  EXPECT_TRUE(is_zero(map.invariants[0] - P("x - a*t", plane)).zero()) << to_text(map.invariants[0]);
  for (const auto& v : check_invariants(map, {parse_vector_field("1; a; 0", plane)}, plane)) {
    EXPECT_TRUE(v.zero());
  }
}

TEST(Invariants, DilationGivesRatioAndWeight) {
  const JetSpace plane = JetSpace::plane();
  const VectorField x3 = parse_vector_field("t; x; alpha1*u", plane);
  const SimilarityMap map = invariants_for({x3}, plane);
  ASSERT_EQ(map.invariants.size(), 1u);
  EXPECT_TRUE(free_of_variables(map.invariants[0] / P("x/t", plane), plane)) << to_text(map.invariants[0]);
  const Expr big_u = Expr::jet("U", {});
  EXPECT_TRUE(is_zero(map.rule - P("t^alpha1", plane) * big_u).zero()) << to_text(map.rule);
}

TEST(Invariants, ProductInvariantOfA2) {
  const JetSpace space = JetSpace::space();
  const auto basis = base_generators("gze2");
  const std::vector<VectorField> fields{combination("a1*Y1 + a2*Y2", basis, space),
                                        combination("Y4", basis, space)};
  const SimilarityMap map = invariants_for(fields, space);
  ASSERT_EQ(map.invariants.size(), 1u);
  EXPECT_TRUE(free_of_variables(map.invariants[0] / P("(a2*t - a1*x)*y", space), space))
      << to_text(map.invariants[0]);
  for (const auto& v : check_invariants(map, fields, space)) EXPECT_TRUE(v.zero());
}

TEST(Pullback, TravellingWaveMatchesFiniteDifferences) {
  // The 1+1 Zoomeron equation (f = u, g = u^2) on u = U(x - a t) is a fixed
  // multiple of the reduced equation evaluated on the same profile.
  const Pde pde = make_preset("zoomeron_1+1");
  const JetSpace& plane = pde.space;
  const VectorField field = parse_vector_field("1; 3/2; 0", plane);
  const SimilarityMap map = invariants_for({field}, plane);
  const ReducedEquation eq = pullback(pde, map, pde.ledger);
  const std::string s = eq.space.variables.front();
  const Expr profile = P("3/2 + " + s + "^2/5 + exp(3*" + s + "/10)", eq.space);
  const Expr reduced = substitute_solution(eq.residual, eq.space, profile);

  const Expr invariant = map.invariants.front();
  const oracle::Function u = [&](const oracle::Point& p) {
    const double xi = oracle::numeric(invariant, {})(p);
    return 1.5 + xi * xi / 5 + std::exp(0.3 * xi);
  };
  const oracle::Zoomeron zoomeron{true, [](double v) { return v; }, [](double v) { return v * v; }};
  std::vector<double> ratios;
  for (const oracle::Point p : {oracle::Point{0.2, 1.1, 0}, oracle::Point{0.7, 0.4, 0},
                                oracle::Point{1.3, 2.2, 0}}) {
    const double direct = oracle::residual(zoomeron, u, p).value;
    NumericPoint point;
    point.leaves[Expr::symbol(s)] = oracle::numeric(invariant, {})(p);
    ratios.push_back(direct / evaluate(reduced, point));
  }
  for (double r : ratios) EXPECT_NEAR(r, ratios.front(), 1e-3 * std::abs(ratios.front()));
}

TEST(Pullback, ReducedSymmetryStillActsAfterY3) {
  // [Y3, Y4] is a multiple of Y3, so reducing by Y3 leaves Y4 acting on the
  // reduced equation.
  const Pde pde = generic_pde("gze2");
  const auto basis = base_generators("gze2");
  const VectorField y3 = combination("Y3", basis, pde.space);
  const VectorField y4 = combination("Y4", basis, pde.space);
  const SimilarityMap map = invariants_for({y3}, pde.space);
  const ReducedEquation eq = pullback(pde, map, pde.ledger);
  const Pde reduced = reduced_pde(pde, eq);
  const VectorField pushed = push_forward(y4, map, pde.space);
  EXPECT_TRUE(verify_symmetry(reduced, pushed, reduced.ledger).passed()) << to_text(pushed);
}

TEST(Integrate, TwiceNamesConstants) {
  const JetSpace line{{"xi"}, "U", 4};
  const ReducedEquation eq{line, P("U_xixixi*U + 3*U_xi*U_xixi", line), {}};
  const ReducedEquation twice = integrate_twice(eq);
  EXPECT_TRUE(depends_on(twice.residual, Expr::symbol("u0")));
  EXPECT_TRUE(depends_on(twice.residual, Expr::symbol("u1")));
  const Expr check = total_derivative(total_derivative(twice.residual, "xi", line), "xi", line);
  EXPECT_TRUE(is_zero(check - eq.residual).zero()) << to_text(twice.residual);
}

TEST(Integrate, NonExactSecondDerivativeThrows) {
  const JetSpace line{{"xi"}, "U", 4};
  EXPECT_THROW(integrate_twice({line, P("U_xi^3", line), {}}), ReductionError);
}

TEST(FirstIntegral, OscillatorEnergy) {
  const JetSpace line{{"xi"}, "U", 4};
  const ReducedEquation ode{line, P("U_xixi + U", line), {}};
  EXPECT_TRUE(first_integral_check(ode, P("U_xi^2/2 + U^2/2", line)).holds);
  EXPECT_FALSE(first_integral_check(ode, P("U_xi^2/2 - U^2/2", line)).holds);
}

TEST(CheckSolution, StaticLogarithm) {
  const CaseEntry& entry = stated_case("gze1", "C");
  const Pde pde = case_pde(entry);
  AssumptionLedger ledger = pde.ledger;
  ledger.assume_nonzero(Expr::symbol("U0"));
  const auto verdict = check_solution(pde.residual, pde.space, P("alpha2*ln(U0*x)", pde.space), ledger);
  EXPECT_EQ(verdict.status, SolutionStatus::ZeroIdentically) << verdict.summary();
}

TEST(CheckSolution, LogarithmOfProductInvariantNeedsAmplitude) {
  const CaseEntry& entry = stated_case("gze2", "III");
  const Pde pde = case_pde(entry);
  AssumptionLedger ledger = pde.ledger;
  for (const char* name : {"u0", "a1", "a2"}) ledger.assume_nonzero(Expr::symbol(name));
  const auto verdict =
      check_solution(pde.residual, pde.space, P("u0*ln((a2*t - a1*x)*y)", pde.space), ledger);
  ASSERT_EQ(verdict.status, SolutionStatus::ZeroGivenConstraints) << verdict.summary();
  ASSERT_EQ(verdict.constraints.size(), 1u);
  EXPECT_EQ(verdict.constraints[0].first, Expr::symbol("u0"));
  EXPECT_TRUE(is_zero(verdict.constraints[0].second - P("-alpha2/(alpha2*K + 2)", pde.space)).zero())
      << to_text(verdict.constraints[0].second);
}

// Every catalogued candidate is evaluated a second way: nested central
// differences of the closed form, with parameters drawn at random and the
// verdict's constraints imposed. The two must agree on whether it solves.
TEST(CheckSolution, VerdictsAgreeWithFiniteDifferences) {
  std::mt19937_64 engine(97);
  std::uniform_real_distribution<double> pick(0.4, 0.9);
  for (const auto& stated : stated_solutions()) {
    const CaseEntry& entry = stated_case(stated.pde, stated.case_id);
    Pde pde = case_pde(entry);
    for (const char* name : {"u0", "U0", "a1", "a2"}) pde.ledger.assume_nonzero(Expr::symbol(name));
    const Expr candidate = P(stated.candidate, pde.space);
    const SolutionVerdict verdict = check_solution(pde.residual, pde.space, candidate, pde.ledger);
    ASSERT_NE(verdict.status, SolutionStatus::Undecided) << stated.location;

    std::map<std::string, double> parameters;
    for (const char* name : {"K", "f0", "g0", "g1", "alpha1", "alpha2", "u0", "U0", "a1", "a2"}) {
      parameters[name] = pick(engine);
    }
    parameters["a1"] = -parameters["a1"];  // keeps (a2 t - a1 x) y positive
    for (const auto& [symbol, value] : verdict.constraints) {
      parameters[symbol.name()] = oracle::numeric(value, parameters)({0, 0, 0});
    }
    const Expr u = pde.space.coordinate({});
    const oracle::Zoomeron eq{stated.pde == "gze1", oracle::of_u(pde.f, u, parameters),
                              oracle::of_u(pde.g, u, parameters)};
    const oracle::Function solution = oracle::numeric(candidate, parameters);

    double worst = 0;
    double loudest = 0;
    int evaluated = 0;
    for (const oracle::Point p : {oracle::Point{1.2, 1.1, 1.4}, oracle::Point{1.7, 1.3, 1.1},
                                  oracle::Point{1.4, 1.9, 1.6}}) {
      const oracle::Sample r = oracle::residual(eq, solution, p);
      if (!std::isfinite(r.value)) continue;
      ++evaluated;
      worst = std::max(worst, std::abs(r.value) / (1e-3 * r.scale + r.noise + 1e-300));
      loudest = std::max(loudest, std::abs(r.value) / std::max({r.scale, 10 * r.noise, 1e-300}));
    }
    ASSERT_GT(evaluated, 0) << stated.location;
    if (verdict.satisfied()) {
      EXPECT_LT(worst, 1.0) << stated.location << ": " << verdict.summary();
    } else {
      EXPECT_GT(loudest, 1e-2) << stated.location << ": " << verdict.summary();
    }
  }
}

}  // namespace
}  // namespace liesym
