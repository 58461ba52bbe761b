#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "liesym/calculus.hpp"
#include "liesym/catalog.hpp"
#include "liesym/jet.hpp"
#include "liesym/random_expr.hpp"
#include "liesym/render.hpp"
#include "liesym/zero_test.hpp"

namespace liesym {
namespace {

const JetSpace kPlane = JetSpace::plane();
const JetSpace kSpace = JetSpace::space();

Expr P(const std::string& text, const JetSpace& space = kPlane) {
  return parse(text, space.parse_options());
}

RandomExprOptions polynomial_fields() {
  RandomExprOptions options;
  options.depth = 2;
  options.abstract_functions = false;
  options.transcendental = false;
  return options;
}

TEST(Prolong, ScalingWeightsEveryJetByItsOrder) {
  // t d_t + x d_x + c u d_u acts on u_J with weight c - |J|.
  const VectorField scaling = parse_vector_field("t; x; c*u", kPlane);
  const ProlongedField pr = prolong(scaling, 4, kPlane);
  for (const auto& [index, coefficient] : pr.eta) {
    const Expr expected =
        (Expr::symbol("c") - Expr(static_cast<long>(index.size()))) * kPlane.coordinate(index);
    EXPECT_TRUE(is_zero(coefficient - expected).zero()) << jet_key(index, kPlane);
  }
  EXPECT_EQ(pr.eta.count(make_index({"t", "t", "t", "x"})), 1u);
}

TEST(Prolong, FirstOrderMatchesDirectFormula) {
  ExprGenerator gen(kPlane, 41, polynomial_fields());
  const Expr u = kPlane.coordinate({});
  const Expr ut = P("u_t");
  const Expr ux = P("u_x");
  auto total = [&](const Expr& e, const std::string& v) {
    return diff(e, Expr::symbol(v)) + P("u_" + v) * diff(e, u);
  };
  for (int i = 0; i < 50; ++i) {
    const VectorField field = gen.field();
    const ProlongedField pr = prolong(field, 1, kPlane);
    for (const std::string v : {"t", "x"}) {
      const Expr direct =
          total(field.eta, v) - ut * total(field.xi[0], v) - ux * total(field.xi[1], v);
      EXPECT_TRUE(is_zero(pr.coefficient(make_index({v})) - direct).zero()) << to_text(field);
    }
  }
}

TEST(Prolong, JsonKeysAreJetNames) {
  const auto json = to_json(prolong(parse_vector_field("1; 0; u", kPlane), 2, kPlane), kPlane);
  ASSERT_TRUE(json.contains("eta"));
  EXPECT_TRUE(json["eta"].contains("u"));
  EXPECT_TRUE(json["eta"].contains("u_tx"));
  EXPECT_TRUE(json["eta"].contains("u_xx"));
}

TEST(TotalDerivative, CommutesOnRandomJets) {
  ExprGenerator gen(kSpace, 43);
  for (int i = 0; i < 100; ++i) {
    const Expr e = gen.expression();
    const Expr tx = total_derivative(total_derivative(e, "x", kSpace), "t", kSpace);
    const Expr xt = total_derivative(total_derivative(e, "t", kSpace), "x", kSpace);
    EXPECT_TRUE(is_zero(tx - xt).zero()) << to_text(e);
  }
}

TEST(VectorField, TextRoundTrip) {
  for (const auto& entry : stated_cases()) {
    const JetSpace space = space_of(entry.pde);
    const VectorField field = parse_vector_field(entry.generator, space);
    EXPECT_EQ(parse_vector_field(to_text(field), space), field) << entry.generator;
  }
  EXPECT_THROW(parse_vector_field("t; x", kSpace), std::exception);
}

TEST(VectorField, OperatorText) {
  EXPECT_EQ(operator_text(parse_vector_field("t; x; alpha1*u", kPlane), kPlane),
            "t*d_t + x*d_x + alpha1*u*d_u");
  EXPECT_EQ(operator_text(parse_vector_field("0; 0; y; 0", kSpace), kSpace), "y*d_y");
}

TEST(Commutator, TranslationAgainstDilation) {
  // [X1, X3] = X1 and [X2, X3] = X2 for X3 = t d_t + x d_x + alpha1 u d_u.
  const VectorField x1 = parse_vector_field("1; 0; 0", kPlane);
  const VectorField x2 = parse_vector_field("0; 1; 0", kPlane);
  const VectorField x3 = parse_vector_field("t; x; alpha1*u", kPlane);
  EXPECT_EQ(commutator(x1, x3, kPlane), x1);
  EXPECT_EQ(commutator(x2, x3, kPlane), x2);
  EXPECT_TRUE(commutator(x1, x1, kPlane).is_zero());
}

TEST(Commutator, YTranslationAgainstYDilation) {
  // [Y3, Y5] = Y3 for Y3 = d_y, Y5 = y d_y - alpha1 u d_u.
  const VectorField y3 = parse_vector_field("0; 0; 1; 0", kSpace);
  const VectorField y5 = parse_vector_field("0; 0; y; -alpha1*u", kSpace);
  EXPECT_EQ(commutator(y3, y5, kSpace), y3);
}

TEST(Commutator, ActsAsOperatorCommutator) {
  ExprGenerator gen(kPlane, 47, polynomial_fields());
  for (int i = 0; i < 50; ++i) {
    const VectorField a = gen.field();
    const VectorField b = gen.field();
    const Expr fn = gen.point_function();
    const Expr lhs = apply(commutator(a, b, kPlane), fn, kPlane);
    const Expr rhs = apply(a, apply(b, fn, kPlane), kPlane) - apply(b, apply(a, fn, kPlane), kPlane);
    EXPECT_TRUE(is_zero(lhs - rhs).zero());
    const VectorField sum = commutator(a, b, kPlane) + commutator(b, a, kPlane);
    for (const auto& c : sum.components()) EXPECT_TRUE(is_zero(c).zero());
  }
}

TEST(Prolong, BracketOfProlongationsIsProlongationOfBracket) {
  ExprGenerator gen(kPlane, 53, polynomial_fields());
  ExprGenerator jets(kPlane, 59, polynomial_fields());
  for (int i = 0; i < 30; ++i) {
    const VectorField a = gen.field();
    const VectorField b = gen.field();
    const Expr e = jets.expression();
    const ProlongedField pa = prolong(a, 3, kPlane);
    const ProlongedField pb = prolong(b, 3, kPlane);
    const ProlongedField pc = prolong(commutator(a, b, kPlane), 3, kPlane);
    const Expr lhs = apply(pc, e, kPlane);
    const Expr rhs = apply(pa, apply(pb, e, kPlane), kPlane) - apply(pb, apply(pa, e, kPlane), kPlane);
    EXPECT_TRUE(is_zero(lhs - rhs).zero()) << to_text(e);
  }
}

}  // namespace
}  // namespace liesym
