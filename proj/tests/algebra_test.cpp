#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "liesym/catalog.hpp"
#include "liesym/lie_algebra.hpp"
#include "liesym/parse.hpp"
#include "liesym/render.hpp"

namespace liesym {
namespace {

LieAlgebra algebra_of(const std::string& pde, const std::string& case_id,
                      std::vector<std::string> names) {
  std::vector<VectorField> fields;
  const auto basis = case_id.empty() ? base_generators(pde) : case_basis(stated_case(pde, case_id), "A");
  for (const auto& b : basis) fields.push_back(b.field);
  return structure_constants(space_of(pde), std::move(fields), std::move(names));
}

LieAlgebra case_a() { return algebra_of("gze1", "A", {"X1", "X2", "X3"}); }
LieAlgebra case_i() { return algebra_of("gze2", "I", {"Y1", "Y2", "Y3", "Y4", "Y5"}); }

TEST(StructureConstants, DilationTable) {
  const LieAlgebra a = case_a();
  EXPECT_EQ(a.bracket_text(0, 2), "X1");
  EXPECT_EQ(a.bracket_text(1, 2), "X2");
  EXPECT_EQ(a.bracket_text(2, 0), "-X1");
  EXPECT_EQ(a.bracket_text(0, 1), "0");
}

TEST(StructureConstants, YDilationCommutesWithY3) {
  const LieAlgebra a = case_i();
  EXPECT_EQ(a.bracket_text(2, 4), "Y3");
  EXPECT_EQ(a.bracket_text(0, 4), "0");
}

TEST(StructureConstants, DependentBasisIsRejected) {
  const JetSpace plane = JetSpace::plane();
  std::vector<VectorField> fields{parse_vector_field("1; 0; 0", plane),
                                  parse_vector_field("2; 0; 0", plane)};
  EXPECT_THROW(structure_constants(plane, fields, {"A", "B"}), LieAlgebraError);
}

TEST(StructureConstants, AntisymmetricAndJacobi) {
  for (const LieAlgebra& a : {case_a(), case_i(), algebra_of("gze2", "", {"Y1", "Y2", "Y3", "Y4"})}) {
    EXPECT_TRUE(antisymmetric(a));
    EXPECT_TRUE(satisfies_jacobi(a));
  }
}

TEST(Identify, NamedAlgebras) {
  EXPECT_EQ(identify(algebra_of("gze1", "", {"X1", "X2"})).label, "2A1");
  EXPECT_EQ(identify(case_a()).label, "A3,3");
  EXPECT_EQ(identify(algebra_of("gze2", "", {"Y1", "Y2", "Y3", "Y4"})).label, "A4,5^ab");
  EXPECT_EQ(identify(case_i()).label, "3A1xs2A1");
}

TEST(Identify, InvariantUnderPermutationAndRescaling) {
  const JetSpace space = JetSpace::space();
  const auto basis = case_basis(stated_case("gze2", "I"), "Y5");
  std::vector<std::size_t> order{0, 1, 2, 3, 4};
  const std::vector<Expr> scales{Expr(2), Rational(-1, 3), Expr(5), Rational(3, 2), Expr(-1)};
  int permutations = 0;
  do {
    std::vector<VectorField> fields;
    std::vector<std::string> names;
    for (std::size_t k = 0; k < order.size(); ++k) {
      fields.push_back(scales[k] * basis[order[k]].field);
      names.push_back("E" + std::to_string(k));
    }
    EXPECT_EQ(identify(structure_constants(space, fields, names)).label, "3A1xs2A1");
    ++permutations;
  } while (std::next_permutation(order.begin(), order.end()) && permutations < 24);
}

TEST(Adjoint, DilationEntries) {
  // Ad(exp(eps X3)) X1 = e^eps X1 and Ad(exp(eps X1)) X3 = X3 - eps X1.
  const LieAlgebra a = case_a();
  const AdjointTable table = adjoint(a);
  EXPECT_EQ(parse(table.entry_text(a, 2, 0)), parse("exp(eps)*X1"));
  EXPECT_EQ(parse(table.entry_text(a, 0, 2)), parse("X3 - eps*X1"));
}

TEST(Adjoint, DerivativeAtZeroIsMinusBracket) {
  for (const LieAlgebra& a : {case_a(), case_i()}) {
    const Expr eps = Expr::symbol("eps");
    const auto n = static_cast<Eigen::Index>(a.dimension());
    for (std::size_t i = 0; i < a.dimension(); ++i) {
      const ExprMatrix m = adjoint_matrix(a, i, eps);
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
          const Expr d = subs(diff(m(k, j), eps), eps, Expr(0));
          const Expr c = a.constants[i][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
          EXPECT_TRUE(is_zero(d + c).zero());
        }
      }
    }
  }
}

TEST(Adjoint, GroupLaw) {
  const Expr e1 = Expr::symbol("e1");
  const Expr e2 = Expr::symbol("e2");
  for (const LieAlgebra& a : {case_a(), case_i()}) {
    for (std::size_t i = 0; i < a.dimension(); ++i) {
      const ExprMatrix lhs = adjoint_matrix(a, i, e1) * adjoint_matrix(a, i, e2);
      const ExprMatrix rhs = adjoint_matrix(a, i, e1 + e2);
      for (Eigen::Index r = 0; r < lhs.rows(); ++r) {
        for (Eigen::Index c = 0; c < lhs.cols(); ++c) EXPECT_TRUE(is_zero(lhs(r, c) - rhs(r, c)).zero());
      }
    }
  }
}

TEST(OptimalSystem, TranslationsAndDilation) {
  for (const auto& stated : stated_optimal_systems()) {
    if (stated.pde != "gze1") continue;
    const LieAlgebra a = stated.dimension == 2 ? algebra_of("gze1", "", {"X1", "X2"}) : case_a();
    OptimalSystem system;
    for (const auto& inv : stated.invariants) system.invariants.push_back(parse(inv));
    for (const auto& [label, text] : stated.representatives) {
      Representative r{label, {}};
      std::stringstream in(text);
      std::string item;
      while (std::getline(in, item, ',')) r.coefficients.push_back(parse(item));
      system.representatives.push_back(r);
    }
    OptimalSystemOptions options;
    options.trials = 50;
    const auto report = optimal_system_check(a, system, options);
    EXPECT_TRUE(report.passed()) << stated.algebra;
    EXPECT_TRUE(report.counterexamples.empty()) << stated.algebra;
  }
}

TEST(ExactLinearAlgebra, RankNullspaceAndRoots) {
  RationalMatrix m(2, 3);
  m << Rational(1), Rational(2), Rational(3), Rational(2), Rational(4), Rational(6);
  EXPECT_EQ(rank(m), 1u);
  EXPECT_EQ(nullspace(m).size(), 2u);
  // (l - 1)(l + 2) = l^2 + l - 2
  const auto roots = rational_roots({Rational(-2), Rational(1), Rational(1)});
  ASSERT_TRUE(roots.has_value());
  EXPECT_EQ(roots->size(), 2u);
  EXPECT_FALSE(rational_roots({Rational(-2), Rational(0), Rational(1)}).has_value());
}

}  // namespace
}  // namespace liesym
