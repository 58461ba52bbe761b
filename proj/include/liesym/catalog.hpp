#pragma once

#include <string>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/jet.hpp"
#include "liesym/pde.hpp"

namespace liesym {

/// One of the published special cases: f, g and the extra generator exactly
/// as stated (with f0, g0, g1 kept symbolic).
struct CaseEntry {
  std::string pde;   // "gze1" or "gze2"
  std::string id;    // A..D or I..IV
  std::string f;
  std::string g;
  std::string generator_name;
  /// Components "xi_t; xi_x[; xi_y]; eta".
  std::string generator;
  /// Family the classification assigns to this g: power, log, exponential, linear.
  std::string family;
  /// Stated g exponent for the power and exponential families.
  std::string exponent;
  /// Parameters assumed nonzero, e.g. "K", "1 - K".
  std::vector<std::string> nonzero;
};

const std::vector<CaseEntry>& stated_cases();
const CaseEntry& stated_case(const std::string& pde, const std::string& id);
std::vector<std::string> case_ids(const std::string& pde);

JetSpace space_of(const std::string& pde);
/// Concrete Pde for a case with the stated f and g, and its nonzero ledger.
Pde case_pde(const CaseEntry& entry);
/// Pde with abstract f, g (nonconstant assumptions in the ledger).
Pde generic_pde(const std::string& pde);

/// Generators common to every f, g: X1, X2 or Y1..Y4.
struct NamedField {
  std::string name;
  VectorField field;
};
std::vector<NamedField> base_generators(const std::string& pde);
NamedField stated_generator(const CaseEntry& entry);
/// Base generators plus the case generator, named with the extra one as
/// `extra_name` (XA, YA or the stated name).
std::vector<NamedField> case_basis(const CaseEntry& entry, const std::string& extra_name);

/// Stated table: row/column names and cells as parseable text in the
/// generator names (eps for the group parameter).
struct StatedTable {
  std::string title;
  std::string pde;
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> cells;
  /// Labels used in the cells that stand for a basis name (e.g. Y5 for YA).
  std::vector<std::pair<std::string, std::string>> aliases;
};
const StatedTable& stated_commutators(const std::string& pde);
const StatedTable& stated_adjoint(const std::string& pde);

struct StatedOptimalSystem {
  std::string algebra;   // "2A1", "A3,3", "A4,5^ab", "3A1xs2A1"
  std::string pde;
  std::size_t dimension;
  /// Claimed invariants as coefficient names (a1..an).
  std::vector<std::string> invariants;
  /// Representatives, e.g. {"Y1+alpha*Y2", "1, alpha, 0, 0"}.
  std::vector<std::pair<std::string, std::string>> representatives;
};
const std::vector<StatedOptimalSystem>& stated_optimal_systems();

/// Closed-form solutions as stated, checked against a case.
struct StatedSolution {
  std::string location;
  std::string pde;
  std::string case_id;
  /// Candidate for u in the original variables.
  std::string candidate;
  /// Similarity transformation the solution is stated with (empty when none).
  std::string rule;
  std::string invariant;
  std::string generators;   // fields the stated similarity map claims invariance for
  std::string description;
  /// Printed form is known to be questionable; the verdict is reported
  /// rather than required to hold.
  bool contested = false;
};
const std::vector<StatedSolution>& stated_solutions();

/// Subalgebras of the 2+1 equation used for double reductions. Fields are
/// given as components; coefficients are a1, a2, a3, b1, b2, b3, aA, bA.
struct StatedSubalgebra {
  std::string name;
  std::vector<std::string> fields;
  std::string case_id;   // case providing YA, empty for none
};
const std::vector<StatedSubalgebra>& stated_subalgebras();
const StatedSubalgebra& stated_subalgebra(const std::string& name);

/// Parses "X1 + a*X2" style combinations of named generators.
VectorField combination(const std::string& text, const std::vector<NamedField>& basis,
                        const JetSpace& space);

}  // namespace liesym
