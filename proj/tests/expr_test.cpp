#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "liesym/calculus.hpp"
#include "liesym/jet.hpp"
#include "liesym/parse.hpp"
#include "liesym/random_expr.hpp"
#include "liesym/render.hpp"
#include "liesym/zero_test.hpp"

namespace liesym {
namespace {

const JetSpace kPlane = JetSpace::plane();

Expr P(const std::string& text) { return parse(text, kPlane.parse_options()); }

RandomExprOptions numeric_corpus() {
  RandomExprOptions options;
  options.max_jet_order = 0;
  options.abstract_functions = false;
  return options;
}

NumericPoint sample_point(ExprGenerator& gen) {
  std::uniform_real_distribution<double> pick(0.5, 2.0);
  NumericPoint point;
  for (const char* name : {"t", "x", "k1", "k2"}) point.leaves[Expr::symbol(name)] = pick(gen.engine());
  point.leaves[kPlane.coordinate({})] = pick(gen.engine());
  return point;
}

TEST(Rational, ArithmeticIsExact) {
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(-2, 4), Rational(-1, 2));
  EXPECT_EQ(Rational(3, 4) * Rational(4, 3), Rational(1));
  EXPECT_EQ(Rational::parse("7/21"), Rational(1, 3));
}

TEST(ZeroTest, ExpandedSquareVanishes) {
  EXPECT_EQ(is_zero(P("(u + 1)^2 - u^2 - 2*u - 1")).status, ZeroStatus::IdenticallyZero);
}

TEST(ZeroTest, JetCoordinateIsNonzero) {
  const auto verdict = is_zero(P("u_tx"));
  EXPECT_EQ(verdict.status, ZeroStatus::Nonzero);
  EXPECT_GT(std::abs(verdict.witness_value), 1e-9);
}

TEST(ZeroTest, ExpOfLogIsIdentity) {
  EXPECT_EQ(is_zero(P("exp(ln(u)) - u")).status, ZeroStatus::IdenticallyZero);
}

TEST(ZeroTest, LedgerKeepsFactorsAwayFromZero) {
  AssumptionLedger ledger;
  ledger.assume_nonzero(P("1 - K"), "K != 1");
  EXPECT_TRUE(ledger.known_nonzero(P("3*(1 - K)^2")));
  EXPECT_FALSE(ledger.known_nonzero(P("K")));
}

TEST(Collect, SplitsPolynomialInJets) {
  const Expr ux = P("u_x");
  const auto parts = collect(P("a*u_x^2 + b*u_x"), {ux});
  EXPECT_EQ(parts.at(pow(ux, Expr(2))), P("a"));
  EXPECT_EQ(parts.at(ux), P("b"));
  EXPECT_TRUE(parts.at(Expr(1)).is_zero());
}

TEST(Collect, ZeroHasOnlyZeroCoefficients) {
  const auto parts = collect(Expr(0), {P("u_x"), P("u_t")});
  for (const auto& [monomial, coefficient] : parts) EXPECT_TRUE(coefficient.is_zero());
}

TEST(Collect, ReconstructsRandomPolynomials) {
  ExprGenerator gen(kPlane, 11);
  const std::vector<Expr> basis{P("u_x"), P("u_t"), P("u_tx")};
  for (int i = 0; i < 100; ++i) {
    Expr e = gen.point_function() * P("u_x^2") + gen.point_function() * P("u_t*u_tx") +
             gen.point_function() * P("u_x") + gen.point_function();
    Expr rebuilt(0);
    for (const auto& [monomial, coefficient] : collect(e, basis)) {
      for (const auto& b : basis) EXPECT_FALSE(depends_on(coefficient, b));
      rebuilt = rebuilt + monomial * coefficient;
    }
    EXPECT_TRUE(is_zero(rebuilt - e).zero()) << to_text(e);
  }
}

TEST(Parse, RendersJetsWithVariableSuffixes) {
  EXPECT_EQ(to_text(P("u_xt")), "u_tx");
  EXPECT_EQ(P("u_txx"), P("u_xtx"));
  EXPECT_THROW(P("u_q"), std::exception);
  EXPECT_THROW(P("(u + 1"), ParseError);
}

TEST(Parse, TotalDerivativeOfProduct) {
  EXPECT_TRUE(is_zero(P("Dx(u*u_t)") - P("u_x*u_t + u*u_tx")).zero());
}

TEST(Parse, RandomRoundTrip) {
  ExprGenerator gen(kPlane, 3);
  for (int i = 0; i < 500; ++i) {
    const Expr e = gen.expression();
    const std::string text = to_text(e);
    const Expr back = P(text);
    EXPECT_EQ(back, e) << text;
    EXPECT_EQ(to_text(back), text);
  }
}

TEST(Parse, GoldenRoundTrip) {
  std::ifstream in(std::string(LIESYM_TEST_DATA) + "/expressions.txt");
  ASSERT_TRUE(in) << "missing golden file";
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    EXPECT_EQ(to_text(P(line)), line);
    ++count;
  }
  EXPECT_GE(count, 10);
}

TEST(Latex, RendersFractionsAndJets) {
  EXPECT_NE(to_latex(P("u_tx/f(u)")).find("\\frac"), std::string::npos);
  EXPECT_NE(to_latex(P("exp(K*u)")).find("e^{"), std::string::npos);
}

TEST(Diff, ProductRuleOnRandomPairs) {
  ExprGenerator gen(kPlane, 5);
  const Expr t = Expr::symbol("t");
  for (int i = 0; i < 200; ++i) {
    const Expr a = gen.expression();
    const Expr b = gen.expression();
    const auto verdict = is_zero(diff(a * b, t) - a * diff(b, t) - b * diff(a, t));
    EXPECT_TRUE(verdict.zero()) << to_text(a) << " ; " << to_text(b);
  }
}

TEST(Diff, AgreesWithCentralDifferences) {
  ExprGenerator gen(kPlane, 17, numeric_corpus());
  int compared = 0;
  for (int i = 0; i < 100; ++i) {
    const Expr e = gen.expression();
    const Expr var = Expr::symbol(gen.variable());
    const Expr derivative = diff(e, var);
    NumericPoint point = sample_point(gen);
    const double exact = evaluate(derivative, point);
    const double at = point.leaves[var];
    const double h = 1e-4 * std::max(1.0, std::abs(at));
    auto shifted = [&](double d) {
      NumericPoint q = point;
      q.leaves[var] = at + d;
      return evaluate(e, q);
    };
    const double approx =
        (-shifted(2 * h) + 8 * shifted(h) - 8 * shifted(-h) + shifted(-2 * h)) / (12 * h);
    if (!std::isfinite(exact) || !std::isfinite(approx)) continue;
    ++compared;
    EXPECT_NEAR(approx, exact, 1e-6 * std::max(1.0, std::abs(exact))) << to_text(e);
  }
  EXPECT_GE(compared, 90);
}

TEST(Normalize, IdempotentOnRandomCorpus) {
  ExprGenerator gen(kPlane, 23);
  for (int i = 0; i < 200; ++i) {
    const Expr e = gen.expression();
    const Expr once = canonical_rational(e);
    EXPECT_EQ(canonical_rational(once), once) << to_text(e);
    const Expr expanded = expand(e);
    EXPECT_EQ(expand(expanded), expanded) << to_text(e);
  }
}

TEST(Normalize, ZeroVerdictImpliesNumericalAgreement) {
  ExprGenerator gen(kPlane, 29, numeric_corpus());
  for (int i = 0; i < 200; ++i) {
    const Expr a = gen.expression();
    const Expr b = expand(a) + (i % 2 == 0 ? Expr(0) : gen.expression());
    if (!is_zero(a - b).zero()) continue;
    for (int k = 0; k < 4; ++k) {
      const NumericPoint point = sample_point(gen);
      const double va = evaluate(a, point);
      const double vb = evaluate(b, point);
      if (!std::isfinite(va) || !std::isfinite(vb)) continue;
      EXPECT_NEAR(va, vb, 1e-9 * std::max(1.0, std::abs(va))) << to_text(a);
    }
  }
}

TEST(Subs, ComposesWithDiffByChainRule) {
  const Expr x = Expr::symbol("x");
  const Expr s = Expr::symbol("s");
  const Expr e = P("exp(2*x)*x^3");
  const Expr inner = P("x^2 + 1");
  const Expr lhs = diff(subs(e, x, inner), x);
  const Expr rhs = subs(diff(e, x), x, inner) * diff(inner, x);
  EXPECT_TRUE(is_zero(lhs - rhs).zero());
  EXPECT_FALSE(depends_on(subs(e, x, s), x));
}

}  // namespace
}  // namespace liesym
