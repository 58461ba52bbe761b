#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "liesym/catalog.hpp"
#include "liesym/render.hpp"

namespace liesym {
namespace {

TEST(Catalog, CaseFunctionsRoundTrip) {
  for (const auto& entry : stated_cases()) {
    const ParseOptions options = space_of(entry.pde).parse_options();
    for (const auto& text : {entry.f, entry.g, entry.exponent}) {
      if (text.empty()) continue;
      const Expr e = parse(text, options);
      EXPECT_EQ(parse(to_text(e), options), e) << entry.pde << " " << entry.id << ": " << text;
    }
  }
}

TEST(Catalog, EveryCaseHasFourOrOneId) {
  EXPECT_EQ(case_ids("gze1"), (std::vector<std::string>{"A", "B", "C", "D"}));
  EXPECT_EQ(case_ids("gze2"), (std::vector<std::string>{"I", "II", "III", "IV"}));
  EXPECT_THROW(stated_case("gze1", "I"), std::invalid_argument);
}

TEST(Catalog, CasePdeKeepsNonzeroParameters) {
  for (const auto& entry : stated_cases()) {
    const Pde pde = case_pde(entry);
    for (const auto& text : entry.nonzero) {
      EXPECT_TRUE(pde.ledger.known_nonzero(parse(text, pde.space.parse_options())))
          << entry.id << " " << text;
    }
  }
}

TEST(Catalog, BasisSizes) {
  EXPECT_EQ(base_generators("gze1").size(), 2u);
  EXPECT_EQ(base_generators("gze2").size(), 4u);
  const auto basis = case_basis(stated_case("gze2", "III"), "YA");
  ASSERT_EQ(basis.size(), 5u);
  EXPECT_EQ(basis.back().name, "YA");
}

TEST(Catalog, TablesAreLinearInTheBasis) {
  for (const std::string pde : {"gze1", "gze2"}) {
    for (const StatedTable* table : {&stated_commutators(pde), &stated_adjoint(pde)}) {
      ASSERT_EQ(table->cells.size(), table->names.size()) << table->title;
      for (const auto& row : table->cells) {
        ASSERT_EQ(row.size(), table->names.size()) << table->title;
        for (const auto& cell : row) EXPECT_NO_THROW(parse(cell)) << cell;
      }
    }
  }
}

TEST(Catalog, SubalgebrasCombineGenerators) {
  const JetSpace space = space_of("gze2");
  for (const auto& sub : stated_subalgebras()) {
    auto basis = base_generators("gze2");
    if (!sub.case_id.empty()) basis.push_back({"YA", stated_generator(stated_case("gze2", sub.case_id)).field});
    for (const auto& text : sub.fields) {
      EXPECT_FALSE(combination(text, basis, space).is_zero()) << sub.name << ": " << text;
    }
  }
  EXPECT_THROW(combination("Y1 + Z", base_generators("gze2"), space), std::invalid_argument);
}

TEST(Catalog, RepresentativesMatchDimension) {
  for (const auto& system : stated_optimal_systems()) {
    for (const auto& [label, coefficients] : system.representatives) {
      const auto commas = static_cast<std::size_t>(std::count(coefficients.begin(), coefficients.end(), ','));
      EXPECT_EQ(commas + 1, system.dimension) << system.algebra << " " << label;
    }
  }
}

}  // namespace
}  // namespace liesym
