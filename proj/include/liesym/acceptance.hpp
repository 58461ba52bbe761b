#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "liesym/catalog.hpp"
#include "liesym/jet.hpp"
#include "liesym/zero_test.hpp"

namespace liesym {

/// A stated value that differs from the derived one.
struct Notice {
  std::string location;
  std::string stated;
  std::string derived;
  std::string note;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  bool undecided = false;
  std::vector<Check> checks;
  std::vector<Notice> notices;
};

struct AcceptanceOptions {
  ZeroTestOptions zero;
  /// Random normalization trials per optimal system.
  int trials = 200;
  /// Instances per property suite.
  int instances = 200;
  /// Relative tolerance of the finite-difference comparison.
  double fd_tolerance = 1e-6;
  bool parallel = true;
};

CriterionResult check_symmetries(const AcceptanceOptions& options);
CriterionResult check_classification(const AcceptanceOptions& options);
CriterionResult check_tables(const AcceptanceOptions& options);
CriterionResult check_identification(const AcceptanceOptions& options);
CriterionResult check_optimal_systems(const AcceptanceOptions& options);
CriterionResult check_reductions(const AcceptanceOptions& options);
CriterionResult check_solutions(const AcceptanceOptions& options);
CriterionResult check_properties(const AcceptanceOptions& options);

/// Extra generator admitted by the case's stated f and g, derived by
/// classification (nullopt when the stated g admits none).
std::optional<VectorField> admitted_generator(const CaseEntry& entry,
                                              const ZeroTestOptions& options = {});
/// Stated commutator or adjoint table against the computed one; mismatched
/// cells become notices.
CriterionResult compare_with_stated(const StatedTable& table, bool adjoint_table,
                                    const ZeroTestOptions& options = {});

/// Runs one criterion by number (1..8).
CriterionResult run_criterion(int id, const AcceptanceOptions& options);
/// Runs all criteria, concurrently when `options.parallel` is set.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

nlohmann::json to_json(const CriterionResult& result);
nlohmann::json to_json(const std::vector<CriterionResult>& results);
/// One "PASS"/"FAIL" line per criterion followed by notices.
std::string scorecard(const std::vector<CriterionResult>& results, bool with_checks = false);

}  // namespace liesym
