#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "liesym/acceptance.hpp"
#include "liesym/catalog.hpp"
#include "liesym/classify.hpp"
#include "liesym/pde.hpp"
#include "liesym/random_expr.hpp"
#include "liesym/render.hpp"
#include "oracle.hpp"

namespace liesym {
namespace {

const std::map<std::string, double> kParameters{{"K", 0.3},  {"f0", 1.2},     {"g0", 0.4},
                                                {"g1", 0.7}, {"alpha1", 0.8}, {"alpha2", 0.6}};

double value_of(const Expr& e) { return oracle::numeric(e, kParameters)({0, 0, 0}); }

/// Whether the one-parameter group of a field of the form
///   sum_i e_i x_i d_{x_i} + c u d_u   or   sum_i e_i x_i d_{x_i} + c d_u
/// maps solutions to solutions: H[T w](p) must be a fixed multiple of
/// H[w](T^{-1} p) for an arbitrary test function w.
bool finite_group_preserves(const CaseEntry& entry, const VectorField& field) {
  const JetSpace space = space_of(entry.pde);
  const Expr u = space.coordinate({});
  std::array<double, 3> weights{0, 0, 0};
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    const Expr var = space.variable(i);
    const std::size_t slot = space.variables[i] == "t" ? 0 : space.variables[i] == "x" ? 1 : 2;
    weights[slot] = field.xi[i].is_zero() ? 0.0 : value_of(field.xi[i] / var);
  }
  const bool scaling = depends_on(field.eta, u);
  const double c = value_of(scaling ? field.eta / u : field.eta);
  const double lambda = 1.3;

  oracle::Zoomeron eq{entry.pde == "gze1", oracle::of_u(parse(entry.f, space.parse_options()), u, kParameters),
                      oracle::of_u(parse(entry.g, space.parse_options()), u, kParameters)};
  const oracle::Function w = [](const oracle::Point& p) {
    return 1.5 + 0.3 * p[0] * p[0] * p[1] + 0.2 * std::exp(0.5 * p[1]) + 0.1 * p[2] * p[0] * p[1];
  };
  auto pulled = [&](const oracle::Point& p) {
    oracle::Point q;
    for (std::size_t i = 0; i < 3; ++i) q[i] = p[i] * std::pow(lambda, -weights[i]);
    return q;
  };
  const oracle::Function transformed = [&](const oracle::Point& p) {
    const double base = w(pulled(p));
    return scaling ? std::pow(lambda, c) * base : base + c * std::log(lambda);
  };

  std::vector<double> ratios;
  for (const oracle::Point p : {oracle::Point{1.1, 1.2, 1.3}, oracle::Point{1.6, 1.1, 1.7},
                                oracle::Point{1.3, 1.8, 1.2}, oracle::Point{1.9, 1.5, 1.9}}) {
    const double a = oracle::residual(eq, transformed, p).value;
    const double b = oracle::residual(eq, w, pulled(p)).value;
    ratios.push_back(a / b);
  }
  for (double r : ratios) {
    if (std::abs(r - ratios.front()) > 1e-3 * std::abs(ratios.front())) return false;
  }
  return true;
}

TEST(VerifySymmetry, TranslationsForAbstractFunctions) {
  for (const std::string name : {"gze1", "gze2"}) {
    const Pde pde = generic_pde(name);
    for (const auto& generator : base_generators(name)) {
      const auto verdict = verify_symmetry(pde, generator.field, pde.ledger);
      EXPECT_TRUE(verdict.passed()) << name << " " << generator.name;
    }
  }
}

TEST(VerifySymmetry, NonSymmetryFailsWithWitness) {
  const Pde pde = generic_pde("gze1");
  const auto verdict = verify_symmetry(pde, parse_vector_field("t; 0; 0", pde.space), pde.ledger);
  EXPECT_EQ(verdict.status, ZeroStatus::Nonzero);
  EXPECT_FALSE(verdict.failures.empty());
}

TEST(VerifySymmetry, StatedGeneratorsAgreeWithFiniteGroupOracle) {
  for (const auto& entry : stated_cases()) {
    const Pde pde = case_pde(entry);
    const VectorField field = stated_generator(entry).field;
    const bool oracle_holds = finite_group_preserves(entry, field);
    const auto verdict = verify_symmetry(pde, field, pde.ledger);
    EXPECT_EQ(verdict.passed(), oracle_holds) << entry.pde << " case " << entry.id;
    EXPECT_NE(verdict.status, ZeroStatus::Undecided) << entry.pde << " case " << entry.id;
  }
}

TEST(VerifySymmetry, AdmittedGeneratorsPassBothChecks) {
  for (const auto& entry : stated_cases()) {
    const auto admitted = admitted_generator(entry);
    ASSERT_TRUE(admitted.has_value()) << entry.pde << " case " << entry.id;
    const Pde pde = case_pde(entry);
    EXPECT_TRUE(verify_symmetry(pde, *admitted, pde.ledger).passed()) << entry.id;
    EXPECT_TRUE(finite_group_preserves(entry, *admitted)) << entry.id << " " << to_text(*admitted);
  }
}

TEST(DeterminingSystem, ReconstructsProlongedCondition) {
  ExprGenerator gen(JetSpace::plane(), 61, [] {
    RandomExprOptions options;
    options.depth = 2;
    options.abstract_functions = false;
    return options;
  }());
  const Pde pde = make_preset("zoomeron_1+1");
  for (int i = 0; i < 20; ++i) {
    const VectorField field = gen.field();
    const auto system = determining_equations(pde, field);
    EXPECT_TRUE(check_reconstruction(pde, field, system).zero()) << to_text(field);
  }
}

TEST(Classify, EveryBranchGeneratorIsVerified) {
  const JetSpace plane = JetSpace::plane();
  const JetSpace space = JetSpace::space();
  const std::vector<Pde> inputs{make_gze1(parse("u^K", plane.parse_options()), abstract_g()),
                                make_gze1(parse("exp(K*u)", plane.parse_options()), abstract_g()),
                                make_gze2(parse("u^K", space.parse_options()), abstract_g()),
                                make_gze2(parse("exp(K*u)", space.parse_options()), abstract_g())};
  for (const auto& pde : inputs) {
    const Classification c = classify(pde);
    EXPECT_FALSE(c.branches.empty());
    for (const auto& branch : c.branches) {
      EXPECT_TRUE(branch.verified()) << pde.name << " " << branch.family;
      for (const auto& field : branch.generators) {
        EXPECT_TRUE(verify_symmetry(with_g(pde, branch.g), field, pde.ledger).passed());
      }
    }
  }
}

TEST(Classify, FamiliesForPowerAndExponentialF) {
  auto families = [](const Pde& pde) {
    std::vector<std::string> out;
    for (const auto& b : classify(pde).branches) out.push_back(b.family);
    return out;
  };
  const JetSpace plane = JetSpace::plane();
  const auto power = families(make_gze1(parse("u^K", plane.parse_options()), abstract_g()));
  EXPECT_NE(std::find(power.begin(), power.end(), "power"), power.end());
  EXPECT_NE(std::find(power.begin(), power.end(), "log"), power.end());
  const JetSpace space = JetSpace::space();
  const auto expo = families(make_gze2(parse("exp(K*u)", space.parse_options()), abstract_g()));
  EXPECT_NE(std::find(expo.begin(), expo.end(), "exponential"), expo.end());
  EXPECT_NE(std::find(expo.begin(), expo.end(), "linear"), expo.end());
}

TEST(Classify, GenericGKeepsTranslationsOnly) {
  const JetSpace plane = JetSpace::plane();
  const Classification c = classify(make_gze1(parse("u^K", plane.parse_options()), abstract_g()));
  const auto generic = std::find_if(c.branches.begin(), c.branches.end(),
                                    [](const ClassificationBranch& b) { return b.family == "generic"; });
  ASSERT_NE(generic, c.branches.end());
  EXPECT_EQ(generic->generators.size(), 2u);
  EXPECT_EQ(generic->algebra.label, "2A1");
}

}  // namespace
}  // namespace liesym
