#include "liesym/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <optional>
#include <sstream>

#include "liesym/catalog.hpp"
#include "liesym/classify.hpp"
#include "liesym/lie_algebra.hpp"
#include "liesym/linear_solve.hpp"
#include "liesym/parse.hpp"
#include "liesym/random_expr.hpp"
#include "liesym/reduction.hpp"
#include "liesym/render.hpp"

namespace liesym {
namespace {

Expr parse_in(const std::string& text, const JetSpace& space) {
  return parse(text, space.parse_options());
}

/// Parses expressions that may mention both u and U.
Expr parse_rule(const std::string& text, const JetSpace& space) {
  ParseOptions options = space.parse_options();
  options.dependents = {space.dependent, "U"};
  return parse(text, options);
}

void add_check(CriterionResult& result, std::string name, bool passed, std::string detail = {}) {
  result.checks.push_back({std::move(name), passed, std::move(detail)});
}

void note_status(CriterionResult& result, ZeroStatus status) {
  if (status == ZeroStatus::Undecided) result.undecided = true;
}

void finalize(CriterionResult& result) {
  result.passed = !result.checks.empty() &&
                  std::all_of(result.checks.begin(), result.checks.end(),
                              [](const Check& c) { return c.passed; });
}

bool same_field(const VectorField& a, const VectorField& b) {
  const auto ca = a.components();
  const auto cb = b.components();
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (!canonical_rational(ca[i] - cb[i]).is_zero()) return false;
  }
  return true;
}

bool same_xi(const VectorField& a, const VectorField& b) {
  if (a.xi.size() != b.xi.size()) return false;
  for (std::size_t i = 0; i < a.xi.size(); ++i) {
    if (!canonical_rational(a.xi[i] - b.xi[i]).is_zero()) return false;
  }
  return true;
}

VectorField subs_field(const VectorField& field, const Expr& from, const Expr& to) {
  std::vector<Expr> xi;
  for (const auto& c : field.xi) xi.push_back(canonical_rational(subs(c, from, to)));
  return {std::move(xi), canonical_rational(subs(field.eta, from, to))};
}

std::string case_label(const CaseEntry& entry) {
  return (entry.pde == "gze1" ? "1+1 classification, case " : "2+1 classification, case ") +
         entry.id;
}

std::string verdict_text(const SymmetryVerdict& verdict) {
  std::ostringstream out;
  out << verdict.equation_count << " determining equations, " << to_string(verdict.status);
  if (!verdict.failures.empty()) {
    out << "; first failing coefficient " << to_text(verdict.failures.front().coefficient);
  }
  return out.str();
}

/// Classification of a case's f with abstract g, with the branch of the
/// case's family compared against the stated generator and g.
struct DerivedCase {
  bool found = false;
  ClassificationBranch branch;
  Expr weight;
  bool free_weight = false;
  /// Weight value that turns the derived generator into the stated one.
  std::optional<Expr> weight_for_generator;
  /// Weight value that turns the derived g into the stated one.
  std::optional<Expr> weight_for_g;
  VectorField derived_generator;
  bool generator_matches = false;
  bool g_matches = false;
  /// Derived generator admitted by the stated f and g.
  std::optional<VectorField> corrected;
};

std::optional<Expr> weight_value(const Expr& gap, const Expr& weight) {
  const Expr normalized = canonical_rational(gap);
  if (!depends_on(normalized, weight)) return std::nullopt;
  if (auto solved = solve_for(normalized, weight)) return canonical_rational(solved->value);
  return std::nullopt;
}

DerivedCase derive_case(const CaseEntry& entry, const ZeroTestOptions& options) {
  DerivedCase out;
  const JetSpace space = space_of(entry.pde);
  const Expr f = parse_in(entry.f, space);
  const Pde pde = entry.pde == "gze1" ? make_gze1(f, abstract_g()) : make_gze2(f, abstract_g());
  const Classification classification = classify(pde, options);
  const auto it =
      std::find_if(classification.branches.begin(), classification.branches.end(),
                   [&](const ClassificationBranch& b) { return b.family == entry.family; });
  if (it == classification.branches.end()) return out;
  out.found = true;
  out.branch = *it;
  out.derived_generator = it->generators.back();
  out.weight =
      entry.family == "power" || entry.family == "log" ? scaling_weight() : shift_weight();
  out.free_weight = depends_on(out.derived_generator.eta, out.weight);

  const VectorField stated = stated_generator(entry).field;
  const Expr stated_g = parse_in(entry.g, space);
  const AssumptionLedger ledger = case_pde(entry).ledger;
  auto same_g = [&](const Expr& g) { return is_zero(g - stated_g, ledger, options).zero(); };

  if (out.free_weight) {
    // The stated forms reuse the weight name, so solve in a fresh symbol.
    const Expr fresh = Expr::symbol("weight");
    const VectorField generator = subs_field(out.derived_generator, out.weight, fresh);
    const Expr g = subs(out.branch.g, out.weight, fresh);
    const Expr exponent = subs(out.branch.exponent, out.weight, fresh);
    out.weight_for_generator = weight_value(stated.eta - generator.eta, fresh);
    out.weight_for_g = weight_value(exponent - parse_in(entry.exponent, space), fresh);
    if (out.weight_for_generator) {
      out.generator_matches =
          same_field(subs_field(generator, fresh, *out.weight_for_generator), stated);
      out.g_matches = same_g(subs(g, fresh, *out.weight_for_generator));
    }
    if (out.weight_for_g) out.corrected = subs_field(generator, fresh, *out.weight_for_g);
  } else {
    out.generator_matches = same_field(out.derived_generator, stated);
    out.g_matches = same_g(out.branch.g);
    if (out.g_matches) out.corrected = out.derived_generator;
  }
  return out;
}

template <class Body>
CriterionResult guarded(int id, std::string title, Body body) {
  CriterionResult result;
  result.id = id;
  result.title = std::move(title);
  try {
    body(result);
  } catch (const std::exception& error) {
    add_check(result, "evaluation", false, std::string("exception: ") + error.what());
  }
  finalize(result);
  return result;
}

// ---------------------------------------------------------------- tables

LieAlgebra algebra_for(const std::string& pde, const std::string& case_id,
                       const std::vector<std::string>& names) {
  const JetSpace space = space_of(pde);
  std::vector<NamedField> basis =
      case_id.empty() ? base_generators(pde) : case_basis(stated_case(pde, case_id), "extra");
  std::vector<VectorField> fields;
  for (const auto& b : basis) fields.push_back(b.field);
  return structure_constants(space, std::move(fields), names);
}

std::vector<Expr> cell_coefficients(const std::string& text, const StatedTable& table) {
  ParseOptions options;
  Expr e = parse(text, options);
  for (const auto& [alias, name] : table.aliases) {
    e = subs(e, Expr::symbol(alias), Expr::symbol(name));
  }
  std::vector<Expr> out;
  Expr rest = e;
  for (const auto& name : table.names) {
    const Expr symbol = Expr::symbol(name);
    out.push_back(canonical_rational(diff(e, symbol)));
    rest = subs(rest, symbol, Expr(0));
  }
  if (!canonical_rational(rest).is_zero()) {
    throw std::invalid_argument("table cell '" + text + "' is not linear in the basis");
  }
  return out;
}

std::string combination_text(const std::vector<Expr>& coefficients,
                             const std::vector<std::string>& names) {
  Expr sum(0);
  for (std::size_t k = 0; k < names.size(); ++k) sum = sum + coefficients[k] * Expr::symbol(names[k]);
  return to_text(canonical_rational(sum));
}

enum class CellMatch { Equal, Sign, Different };

CellMatch compare_cells(const std::vector<Expr>& stated, const std::vector<Expr>& derived,
                        bool in_eps, const ZeroTestOptions& options, CriterionResult& result,
                        std::string& how) {
  auto equal = [&](const Expr& a, const Expr& b) {
    const auto v = is_zero(a - b, {}, options);
    note_status(result, v.status);
    return v.zero();
  };
  auto all = [&](auto&& predicate) {
    for (std::size_t k = 0; k < stated.size(); ++k) {
      if (!predicate(k)) return false;
    }
    return true;
  };
  if (all([&](std::size_t k) { return equal(stated[k], derived[k]); })) return CellMatch::Equal;
  if (all([&](std::size_t k) { return equal(stated[k], -derived[k]); })) {
    how = "overall sign";
    return CellMatch::Sign;
  }
  if (in_eps) {
    const Expr eps = Expr::symbol("eps");
    if (all([&](std::size_t k) { return equal(stated[k], subs(derived[k], eps, -eps)); })) {
      how = "sign of eps";
      return CellMatch::Sign;
    }
  }
  std::size_t flipped = 0;
  bool rest_equal = true;
  for (std::size_t k = 0; k < stated.size(); ++k) {
    if (equal(stated[k], derived[k])) continue;
    if (!derived[k].is_zero() && equal(stated[k], -derived[k])) {
      ++flipped;
    } else {
      rest_equal = false;
    }
  }
  if (rest_equal && flipped == 1) {
    how = "sign of one term";
    return CellMatch::Sign;
  }
  return CellMatch::Different;
}

void compare_table(const StatedTable& table, const LieAlgebra& algebra, bool adjoint_table,
                   const ZeroTestOptions& options, CriterionResult& result) {
  const std::size_t n = table.names.size();
  std::optional<AdjointTable> ad;
  if (adjoint_table) ad = adjoint(algebra, Expr::symbol("eps"));
  std::vector<std::string> different;
  std::size_t signs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto stated = cell_coefficients(table.cells[i][j], table);
      std::vector<Expr> derived(n);
      for (std::size_t k = 0; k < n; ++k) {
        derived[k] = adjoint_table ? (*ad).matrices[i](static_cast<Eigen::Index>(k),
                                                       static_cast<Eigen::Index>(j))
                                   : algebra.constants[i][j][k];
      }
      std::string how;
      const CellMatch match = compare_cells(stated, derived, adjoint_table, options, result, how);
      if (match == CellMatch::Equal) continue;
      const std::string location =
          table.title + ", row " + table.names[i] + ", column " + table.names[j];
      if (match == CellMatch::Sign) {
        ++signs;
        result.notices.push_back({location, table.cells[i][j],
                                  combination_text(derived, table.names),
                                  "sign mismatch (" + how + ")"});
      } else {
        different.push_back(table.names[i] + "/" + table.names[j]);
        result.notices.push_back({location, table.cells[i][j],
                                  combination_text(derived, table.names),
                                  "entry differs beyond a sign"});
      }
    }
  }
  std::ostringstream detail;
  detail << n * n << " cells, " << signs << " sign notices";
  if (!different.empty()) {
    detail << ", differing cells:";
    for (const auto& d : different) detail << " " << d;
  }
  add_check(result, table.title, different.empty(), detail.str());
}

// ------------------------------------------------------------ reductions

Expr second_derivative(const Expr& e, const JetSpace& space) {
  const std::string& s = space.variables.front();
  return total_derivative(total_derivative(e, s, space), s, space);
}

Expr function_of(const std::string& name, const JetSpace& space) {
  return Expr::func(name, 0, space.coordinate({}));
}

Expr without_constants(const Expr& e) {
  return expand(subs(subs(e, Expr::symbol("u0"), Expr(0)), Expr::symbol("u1"), Expr(0)));
}

/// Coefficients of the highest jet and of g''(U), used to compare a derived
/// reduced equation with a stated one.
std::pair<Expr, Expr> balance(const Expr& e, const JetSpace& space, int order) {
  const std::string& s = space.variables.front();
  const Expr top = space.coordinate(MultiIndex(static_cast<std::size_t>(order), s));
  const Expr marker = Expr::symbol("G2");
  const Expr marked = expand(subs(e, Expr::func("g", 2, space.coordinate({})), marker));
  return {diff(marked, top), diff(marked, marker)};
}

/// Whether derived = scale * stated in the balance of the two parts.
bool rebalanced(const Expr& derived, const Expr& stated, const Expr& scale,
                const JetSpace& space, const AssumptionLedger& ledger,
                const ZeroTestOptions& options) {
  const auto [dt, dg] = balance(derived, space, 4);
  const auto [st, sg] = balance(stated, space, 4);
  return is_zero(dt * sg - scale * st * dg, ledger, options).zero();
}

std::vector<std::string> split_list(const std::string& text, char separator) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, separator)) {
    const auto first = item.find_first_not_of(' ');
    const auto last = item.find_last_not_of(' ');
    if (first != std::string::npos) out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

bool all_zero(const std::vector<ZeroVerdict>& verdicts, CriterionResult& result) {
  bool ok = true;
  for (const auto& v : verdicts) {
    note_status(result, v.status);
    ok = ok && v.zero();
  }
  return ok;
}

}  // namespace

std::optional<VectorField> admitted_generator(const CaseEntry& entry,
                                              const ZeroTestOptions& options) {
  return derive_case(entry, options).corrected;
}

CriterionResult compare_with_stated(const StatedTable& table, bool adjoint_table,
                                    const ZeroTestOptions& options) {
  return guarded(3, table.title, [&](CriterionResult& result) {
    const std::string case_id = table.pde == "gze1" ? "A" : "I";
    compare_table(table, algebra_for(table.pde, case_id, table.names), adjoint_table, options,
                  result);
  });
}

// ------------------------------------------------------------ criterion 1

CriterionResult check_symmetries(const AcceptanceOptions& options) {
  return guarded(1, "Symmetry verification", [&](CriterionResult& result) {
    for (const auto& entry : stated_cases()) {
      const Pde pde = case_pde(entry);
      for (const auto& named : case_basis(entry, entry.generator_name)) {
        const auto verdict = verify_symmetry(pde, named.field, pde.ledger, options.zero);
        note_status(result, verdict.status);
        add_check(result, entry.pde + " case " + entry.id + ": " + named.name, verdict.passed(),
                  verdict_text(verdict));
        if (verdict.passed() || named.name != entry.generator_name) continue;
        const DerivedCase derived = derive_case(entry, options.zero);
        Notice notice{case_label(entry), named.name + " = " + operator_text(named.field, pde.space),
                      "", ""};
        if (derived.corrected) {
          const auto check = verify_symmetry(pde, *derived.corrected, pde.ledger, options.zero);
          notice.derived = operator_text(*derived.corrected, pde.space);
          notice.note = check.passed() ? "derived generator is admitted by the stated f and g"
                                       : "derived generator is not admitted either";
        } else {
          notice.derived = "no generator of the " + entry.family + " family fits the stated g";
        }
        result.notices.push_back(std::move(notice));
      }
    }
    for (const std::string name : {"gze1", "gze2"}) {
      const Pde pde = generic_pde(name);
      for (const auto& named : base_generators(name)) {
        const auto verdict = verify_symmetry(pde, named.field, pde.ledger, options.zero);
        note_status(result, verdict.status);
        add_check(result, name + " abstract f, g: " + named.name, verdict.passed(),
                  verdict_text(verdict));
      }
    }
  });
}

// ------------------------------------------------------------ criterion 2

CriterionResult check_classification(const AcceptanceOptions& options) {
  return guarded(2, "Classification", [&](CriterionResult& result) {
    for (const auto& entry : stated_cases()) {
      const JetSpace space = space_of(entry.pde);
      const DerivedCase derived = derive_case(entry, options.zero);
      const std::string name = entry.pde + " case " + entry.id;
      if (!derived.found) {
        add_check(result, name, false, "no " + entry.family + " branch for f = " + entry.f);
        continue;
      }
      const VectorField stated = stated_generator(entry).field;
      const std::string label = entry.pde == "gze1" ? "A3,3" : "3A1xs2A1";
      const bool free_expected = entry.family == "power" || entry.family == "exponential";
      const std::size_t dimension = entry.pde == "gze1" ? 3 : 5;
      std::ostringstream detail;
      detail << "family " << derived.branch.family << ", " << derived.branch.algebra.label
             << ", extra generator " << operator_text(derived.derived_generator, space)
             << ", g = " << to_text(derived.branch.g);
      if (free_expected && derived.weight_for_generator) {
        detail << ", exponent "
               << to_text(canonical_rational(subs(derived.branch.exponent, derived.weight,
                                                  *derived.weight_for_generator)))
               << " (stated " << entry.exponent << ")";
      }
      for (const auto& [w, value] : derived.branch.constraints) {
        detail << ", " << to_text(w) << " = " << to_text(value);
      }
      const bool structure = derived.branch.verified() &&
                             derived.branch.algebra.label == label &&
                             derived.branch.generators.size() == dimension &&
                             same_xi(derived.derived_generator, stated) &&
                             derived.free_weight == free_expected;
      add_check(result, name, structure, detail.str());
      if (derived.generator_matches && derived.g_matches) continue;

      Notice notice{case_label(entry),
                    operator_text(stated, space) + " with g = " + entry.g, "", ""};
      if (derived.free_weight && derived.weight_for_generator) {
        notice.derived = "g = " + to_text(canonical_rational(subs(
                                      derived.branch.g, derived.weight,
                                      *derived.weight_for_generator))) +
                         " for the stated generator";
        if (derived.corrected) {
          notice.derived += "; " + operator_text(*derived.corrected, space) + " for the stated g";
        }
        notice.note = "stated generator and g exponent are not consistent";
      } else {
        notice.derived = operator_text(derived.derived_generator, space) + " with g = " +
                         to_text(derived.branch.g);
        notice.note = "weight fixed by the branch differs from the stated one";
      }
      result.notices.push_back(std::move(notice));
    }
  });
}

// ------------------------------------------------------------ criterion 3

CriterionResult check_tables(const AcceptanceOptions& options) {
  return guarded(3, "Algebra tables", [&](CriterionResult& result) {
    const auto& t1 = stated_commutators("gze1");
    compare_table(t1, algebra_for("gze1", "A", t1.names), false, options.zero, result);
    const auto& t2 = stated_adjoint("gze1");
    compare_table(t2, algebra_for("gze1", "A", t2.names), true, options.zero, result);
    const auto& t3 = stated_commutators("gze2");
    compare_table(t3, algebra_for("gze2", "I", t3.names), false, options.zero, result);
    const auto& t4 = stated_adjoint("gze2");
    compare_table(t4, algebra_for("gze2", "I", t4.names), true, options.zero, result);
  });
}

// ------------------------------------------------------------ criterion 4

CriterionResult check_identification(const AcceptanceOptions&) {
  return guarded(4, "Algebra identification", [&](CriterionResult& result) {
    auto expect = [&](const std::string& name, const LieAlgebra& algebra,
                      const std::string& label) {
      const Identification id = identify(algebra);
      add_check(result, name, id.label == label, id.summary() + " (expected " + label + ")");
    };
    expect("gze1 abstract f, g", algebra_for("gze1", "", {"X1", "X2"}), "2A1");
    expect("gze2 abstract f, g", algebra_for("gze2", "", {"Y1", "Y2", "Y3", "Y4"}), "A4,5^ab");
    for (const auto& entry : stated_cases()) {
      const bool plane = entry.pde == "gze1";
      const std::vector<std::string> names =
          plane ? std::vector<std::string>{"X1", "X2", "XA"}
                : std::vector<std::string>{"Y1", "Y2", "Y3", "Y4", "YA"};
      expect(entry.pde + " case " + entry.id, algebra_for(entry.pde, entry.id, names),
             plane ? "A3,3" : "3A1xs2A1");
    }
  });
}

// ------------------------------------------------------------ criterion 5

CriterionResult check_optimal_systems(const AcceptanceOptions& options) {
  return guarded(5, "Adjoint invariants and optimal systems", [&](CriterionResult& result) {
    for (const auto& stated : stated_optimal_systems()) {
      std::string case_id;
      std::vector<std::string> names;
      if (stated.dimension == 2) {
        names = {"X1", "X2"};
      } else if (stated.dimension == 3) {
        names = {"X1", "X2", "XA"};
        case_id = "A";
      } else if (stated.dimension == 4) {
        names = {"Y1", "Y2", "Y3", "Y4"};
      } else {
        names = {"Y1", "Y2", "Y3", "Y4", "YA"};
        case_id = "I";
      }
      const LieAlgebra algebra = algebra_for(stated.pde, case_id, names);
      const auto coefficients = coefficient_symbols(stated.dimension);
      OptimalSystem system;
      ParseOptions parse_options;
      for (const auto& invariant : stated.invariants) {
        const Expr phi = parse(invariant, parse_options);
        system.invariants.push_back(phi);
        const auto check = check_invariant(algebra, phi, coefficients, options.zero);
        for (const auto& v : check.per_generator) note_status(result, v.status);
        add_check(result, stated.algebra + " invariant " + invariant, check.invariant);
      }
      for (const auto& [label, text] : stated.representatives) {
        Representative representative{label, {}};
        for (const auto& c : split_list(text, ',')) {
          representative.coefficients.push_back(parse(c, parse_options));
        }
        system.representatives.push_back(std::move(representative));
      }
      OptimalSystemOptions os_options;
      os_options.trials = options.trials;
      os_options.seed = options.zero.seed;
      os_options.tolerance = options.zero.tolerance;
      os_options.zero = options.zero;
      const auto report = optimal_system_check(algebra, system, os_options);
      std::ostringstream detail;
      detail << "invariants " << (report.invariants_ok ? "ok" : "failed") << ", inequivalence "
             << (report.inequivalence_ok ? "ok" : "failed") << ", completeness "
             << (report.completeness_ok ? "ok" : "failed") << ", " << report.trials
             << " trials, " << report.counterexamples.size() << " counterexamples";
      for (const auto& note : report.inequivalence_notes) detail << "; " << note;
      add_check(result, stated.algebra + " optimal system",
                report.passed() && report.counterexamples.empty() &&
                    report.trials >= options.trials,
                detail.str());
      for (const auto& c : report.degenerate_counterexamples) {
        std::ostringstream vec;
        for (double x : c.vector) vec << x << " ";
        result.notices.push_back({"optimal system " + stated.algebra + ", degenerate stratum",
                                  "representatives as listed", vec.str(), c.reason});
      }
    }
  });
}

// ------------------------------------------------------------ criterion 6

CriterionResult check_reductions(const AcceptanceOptions& options) {
  return guarded(6, "Reductions", [&](CriterionResult& result) {
    const ZeroTestOptions& zero = options.zero;

    // Travelling waves of the 1+1 equation.
    {
      const Pde pde = generic_pde("gze1");
      const JetSpace& space = pde.space;
      const Expr alpha = Expr::symbol("alpha");
      AssumptionLedger ledger = pde.ledger;
      ledger.assume_nonzero(alpha, "travelling-wave speed");
      ledger.assume_nonzero(alpha * alpha - Expr(1), "generic branch");
      const SimilarityMap map = invariants_for({parse_vector_field("1; alpha; 0", space)}, space);
      const auto inv = is_zero(map.invariants.front() - parse_in("x - alpha*t", space), {}, zero);
      note_status(result, inv.status);
      add_check(result, "X1 + alpha X2: invariant x - alpha t", inv.zero(),
                to_text(map.invariants.front()));

      const ReducedEquation eq = pullback(pde, map, ledger);
      const JetSpace& rs = eq.space;
      const std::string& s = rs.variables.front();
      const Expr f = function_of("f", rs);
      const Expr g = function_of("g", rs);
      const Expr upp = rs.coordinate(make_index({s, s}));
      const Expr stated = (alpha * alpha - Expr(1)) * second_derivative(upp / f, rs) +
                          Expr(2) * second_derivative(g, rs);
      const auto factor = proportional(eq.residual, stated, rs, ledger, zero);
      add_check(result, "X1 + alpha X2: reduced equation", factor.has_value(),
                factor ? "factor " + to_text(*factor) : to_text(eq.residual));

      const ReducedEquation twice = integrate_twice(eq);
      const Expr core = expand(without_constants(twice.residual) * f);
      const Expr printed = upp + Expr(2) * g * f;
      const auto k = proportional(core, printed, rs, ledger, zero);
      add_check(result, "X1 + alpha X2: integrated equation with constants u1, u0",
                k.has_value(),
                "integrated: " + to_text(twice.residual) +
                    (k ? "; factor " + to_text(*k) : "; not proportional to U'' + 2 g f"));
      if (!k) {
        const Expr lambda2 = alpha * alpha - Expr(1);
        const auto rescaled = proportional(subs(core, upp, upp / lambda2), printed, rs, ledger, zero);
        result.notices.push_back(
            {"1+1 travelling-wave reduction, integrated form", "U'' + (2 g(U) + u1 xi + u0) f(U) = 0",
             to_text(twice.residual) + " = 0",
             rescaled ? "holds after rescaling xi by sqrt(alpha^2 - 1); the factor alpha^2 - 1 is "
                        "dropped in the stated form"
                      : "not equivalent"});
      }

      for (const std::string speed : {"1", "-1"}) {
        const Pde generic = generic_pde("gze1");
        const SimilarityMap unit =
            invariants_for({parse_vector_field("1; " + speed + "; 0", space)}, space);
        const ReducedEquation reduced = pullback(generic, unit, generic.ledger);
        const ReducedEquation integrated = integrate_twice(reduced);
        const JetSpace& us = integrated.space;
        const Expr big_g = Expr::symbol("G");
        const Expr residual = subs(integrated.residual, function_of("g", us), big_g);
        bool ok = jets_of(residual).empty();
        const Expr cg = canonical_rational(diff(residual, big_g));
        ok = ok && !cg.is_zero() && !depends_on(cg, big_g);
        Expr value;
        if (ok) {
          value = canonical_rational(-expand(subs(residual, big_g, Expr(0))) / cg);
          const auto degree = polynomial_degree(value, us.variable(0));
          ok = degree && *degree <= 1;
        }
        add_check(result, "alpha = " + speed + ": g(U) affine in the invariant", ok,
                  ok ? "g(U) = " + to_text(value) : to_text(integrated.residual));
      }
    }

    const Pde pde2 = generic_pde("gze2");
    const JetSpace& space2 = pde2.space;
    auto basis = base_generators("gze2");

    // A1: travelling waves of the 2+1 equation.
    {
      const auto& sub = stated_subalgebra("A1");
      std::vector<VectorField> fields;
      for (const auto& text : sub.fields) fields.push_back(combination(text, basis, space2));
      const Expr det = parse_in("a1*b2 - a2*b1", space2);
      AssumptionLedger ledger = pde2.ledger;
      ledger.assume_nonzero(det, "independent generators");
      const Expr xi = parse_in(
          "(y*(a1*b2 - b1*a2) + x*(b1*a3 - a1*b3) + t*(a2*b3 - a3*b2))/(a1*b2 - a2*b1)", space2);
      const SimilarityMap map = similarity_map({xi}, {"xi"}, parse_rule("U", space2), space2);
      add_check(result, "A1: stated invariant",
                all_zero(check_invariants(map, fields, space2, zero), result), to_text(xi));
      const ReducedEquation eq = pullback(pde2, map, ledger);
      const JetSpace& rs = eq.space;
      const Expr f = function_of("f", rs);
      const Expr g = function_of("g", rs);
      const Expr upp = rs.coordinate(make_index({"xi", "xi"}));
      const Expr p = parse_in("a2*b3 - a3*b2", space2);
      const Expr q = parse_in("a3*b1 - a1*b3", space2);
      const Expr r = parse_in("a1*b3 - b1*a3", space2);
      const Expr stated = (p * p - q * q) * r * second_derivative(upp / f, rs) +
                          Expr(2) * p * r * second_derivative(g, rs);
      const auto factor = proportional(eq.residual, stated, rs, ledger, zero);
      add_check(result, "A1: reduced travelling-wave equation", factor.has_value(),
                factor ? "factor " + to_text(*factor) : "not proportional");
      if (!factor) {
        std::string scale = "a factor that is not a power of a1 b2 - a2 b1";
        for (const long power : {-1L, 1L, -2L, 2L}) {
          if (rebalanced(eq.residual, stated, pow(det, Expr(power)), rs, ledger, zero)) {
            scale = "(a1 b2 - a2 b1)^" + std::to_string(power);
            break;
          }
        }
        result.notices.push_back({"2+1 reduction with A1",
                                  "(P^2 - Q^2) R (U''/f)'' + 2 P R (g)''",
                                  "same terms with the (U''/f)'' part scaled by " + scale,
                                  "P = a2 b3 - a3 b2, Q = a3 b1 - a1 b3, R = a1 b3 - b1 a3"});
      }
    }

    // A2: the product invariant.
    {
      const auto& sub = stated_subalgebra("A2");
      std::vector<VectorField> fields;
      for (const auto& text : sub.fields) fields.push_back(combination(text, basis, space2));
      AssumptionLedger ledger = pde2.ledger;
      ledger.assume_nonzero(Expr::symbol("a1"), "subalgebra coefficient");
      ledger.assume_nonzero(Expr::symbol("a2"), "subalgebra coefficient");
      const Expr zeta = parse_in("(a2*t - a1*x)*y", space2);
      const SimilarityMap map = similarity_map({zeta}, {"zeta"}, parse_rule("U", space2), space2);
      add_check(result, "A2: stated invariant",
                all_zero(check_invariants(map, fields, space2, zero), result), to_text(zeta));
      const ReducedEquation eq = pullback(pde2, map, ledger);
      const JetSpace& rs = eq.space;
      const Expr f = function_of("f", rs);
      const Expr g = function_of("g", rs);
      const Expr flux = total_derivative(rs.variable(0) * rs.coordinate(make_index({"zeta"})),
                                         "zeta", rs);
      const Expr stated = parse_in("a2 - a1", space2) * second_derivative(flux / f, rs) +
                          Expr(2) * second_derivative(g, rs);
      const auto factor = proportional(eq.residual, stated, rs, ledger, zero);
      add_check(result, "A2: reduced equation", factor.has_value(),
                factor ? "factor " + to_text(*factor) : "not proportional");
      if (!factor) {
        const Expr a1 = Expr::symbol("a1");
        const Expr a2 = Expr::symbol("a2");
        const bool ratio = rebalanced(eq.residual, stated, (a1 + a2) / a2, rs, ledger, zero);
        result.notices.push_back({"2+1 reduction with A2", "(a2 - a1) ((zeta U')'/f)'' + 2 (g)''",
                                  ratio ? "same terms with the first part scaled by (a1 + a2)/a2"
                                        : to_text(eq.residual),
                                  "not proportional"});
      }
      try {
        const ReducedEquation twice = integrate_twice(eq);
        const Expr core = expand(without_constants(twice.residual) * f);
        const auto k = proportional(core, flux + Expr(2) * g * f, rs, ledger, zero);
        add_check(result, "A2: integrated equation", k.has_value(),
                  "integrated: " + to_text(twice.residual));
      } catch (const ReductionError& error) {
        add_check(result, "A2: integrated equation", false, error.what());
      }
    }

    // A3: g(U(x/t)).
    {
      std::vector<VectorField> fields{basis[2].field, basis[3].field};
      const SimilarityMap map = invariants_for(fields, space2);
      const auto inv = is_zero(map.invariants.front() - parse_in("x/t", space2), {}, zero);
      note_status(result, inv.status);
      add_check(result, "A3: invariant x/t", inv.zero(), to_text(map.invariants.front()));
      const ReducedEquation eq = pullback(pde2, map, pde2.ledger);
      const JetSpace& rs = eq.space;
      const Expr placeholder = Expr::symbol("z");
      const Expr identity_g = substitute_function(eq.residual, "g", placeholder, placeholder);
      const Expr stated = parse_in("u1*" + rs.variables.front() + " + u0", rs);
      const auto verdict = check_solution(identity_g, rs, stated, {}, zero);
      note_status(result, verdict.check.status);
      add_check(result, "A3: g(u) = u1 x/t + u0", verdict.satisfied(), verdict.summary());
      if (!verdict.satisfied()) {
        std::string derived = "no quadrature";
        const ReducedEquation reduced{rs, identity_g, {}};
        if (const auto solution =
                solve_first_order(integrate_once(reduced, Expr::symbol("u1")), Expr::symbol("u0"))) {
          const auto confirm = check_solution(identity_g, rs, *solution, {}, zero);
          derived = "g(u) = " + to_text(*solution) + " (" + confirm.summary() + ")";
        }
        result.notices.push_back({"2+1 reduction with A3", "g(u) = u1 x/t + u0", derived,
                                  "reduced equation is (sigma (g(U))')' = 0"});
      }
    }

    // A5: reduced equation only.
    {
      const auto& sub = stated_subalgebra("A5");
      const CaseEntry& entry = stated_case("gze2", sub.case_id);
      const DerivedCase derived = derive_case(entry, zero);
      if (!derived.corrected) throw ReductionError("no admitted extra generator for case " + entry.id);
      auto extended = basis;
      extended.push_back({"YA", *derived.corrected});
      std::vector<VectorField> fields;
      for (const auto& text : sub.fields) fields.push_back(combination(text, extended, space2));
      const Pde pde = case_pde(entry);
      const SimilarityMap map = invariants_for(fields, space2);
      const bool invariant = all_zero(check_invariants(map, fields, space2, zero), result);
      const ReducedEquation eq = pullback(pde, map, pde.ledger);
      std::ostringstream detail;
      detail << "invariant " << to_text(map.invariants.front()) << ", rule " << to_text(map.rule)
             << ", " << terms_of(eq.residual).size() << " terms, no solution sought";
      add_check(result, "A5: reduced equation emitted", invariant && !eq.residual.is_zero(),
                detail.str());
    }
  });
}

// ------------------------------------------------------------ criterion 7

CriterionResult check_solutions(const AcceptanceOptions& options) {
  return guarded(7, "Solution catalog", [&](CriterionResult& result) {
    const ZeroTestOptions& zero = options.zero;
    const auto& solutions = stated_solutions();
    auto evaluate_one = [&](const StatedSolution& stated) {
      const CaseEntry& entry = stated_case(stated.pde, stated.case_id);
      Pde pde = case_pde(entry);
      for (const char* name : {"u0", "U0", "a1", "a2"}) {
        pde.ledger.assume_nonzero(Expr::symbol(name), "integration constant or coefficient");
      }
      return check_solution(pde.residual, pde.space, parse_in(stated.candidate, pde.space),
                            pde.ledger, zero);
    };
    std::vector<std::future<SolutionVerdict>> pending;
    for (const auto& stated : solutions) {
      pending.push_back(std::async(options.parallel ? std::launch::async : std::launch::deferred,
                                   evaluate_one, std::cref(stated)));
    }
    for (std::size_t i = 0; i < solutions.size(); ++i) {
      const StatedSolution& stated = solutions[i];
      const SolutionVerdict verdict = pending[i].get();
      note_status(result, verdict.check.status);
      const std::string name = stated.location + ": u = " + stated.candidate;
      if (stated.contested) {
        add_check(result, name + " (adjudicated)",
                  verdict.status != SolutionStatus::Undecided, verdict.summary());
      } else {
        add_check(result, name, verdict.satisfied(), verdict.summary());
      }
      if (!verdict.satisfied()) {
        result.notices.push_back({stated.location, "u = " + stated.candidate, verdict.summary(),
                                  stated.contested ? "stated solution does not satisfy the equation"
                                                   : "required solution fails"});
      }

      if (stated.rule.empty() || stated.generators.empty()) continue;
      const CaseEntry& entry = stated_case(stated.pde, stated.case_id);
      const JetSpace space = space_of(stated.pde);
      const auto basis = case_basis(entry, entry.generator_name);
      std::vector<VectorField> fields;
      for (const auto& text : split_list(stated.generators, ',')) {
        fields.push_back(combination(text, basis, space));
      }
      const SimilarityMap map = similarity_map(
          {parse_in(stated.invariant, space)},
          {stated.invariant == "x/t" ? "sigma" : "zeta"}, parse_rule(stated.rule, space), space);
      const auto verdicts = check_invariants(map, fields, space, zero);
      bool invariant = true;
      for (const auto& v : verdicts) invariant = invariant && v.zero();
      if (!invariant) {
        result.notices.push_back({stated.location,
                                  "u = " + stated.rule + " with invariant " + stated.invariant +
                                      " under " + stated.generators,
                                  "not invariant", "the stated transformation does not match the "
                                                   "stated generators"});
      }
    }

    // First integrals of the travelling-wave equation with u1 = 0.
    const JetSpace line{{"xi"}, "U", 4};
    const Expr big_u = line.coordinate({});
    const Expr up = line.coordinate(make_index({"xi"}));
    const Expr upp = line.coordinate(make_index({"xi", "xi"}));
    const Expr u0 = Expr::symbol("u0");
    const Expr half = Expr(Rational(1, 2));
    {
      const Expr f = function_of("f", line);
      const Expr g = function_of("g", line);
      const ReducedEquation ode{line, upp + (Expr(2) * g + u0) * f, {}};
      const Expr primitive = Expr::func("P", 0, big_u);
      const std::vector<std::pair<Expr, Expr>> rules{{primitive, (Expr(2) * g + u0) * f}};
      const auto stated = first_integral_check(ode, half * up * up - primitive, rules, zero);
      const auto derived = first_integral_check(ode, half * up * up + primitive, rules, zero);
      note_status(result, stated.verdict.status);
      note_status(result, derived.verdict.status);
      add_check(result, "quadrature first integral (adjudicated)",
                derived.holds && stated.verdict.status != ZeroStatus::Undecided,
                std::string("stated form ") + (stated.holds ? "holds" : "fails") +
                    ", opposite sign of the potential " + (derived.holds ? "holds" : "fails"));
      if (!stated.holds) {
        result.notices.push_back({"1+1 travelling waves, quadrature",
                                  "1/2 U'^2 - P(U) = h, P' = 2 g f + u0 f",
                                  "1/2 U'^2 + P(U) = h", "sign of the potential"});
      }
    }
    {
      const Expr f = big_u;
      const Expr g = big_u * big_u;
      const ReducedEquation ode{line, upp + Expr(2) * g * f, {}};
      const auto potential = integrate(Expr(2) * g * f, big_u);
      const auto stated = first_integral_check(ode, half * up * up - half * big_u * big_u, {}, zero);
      note_status(result, stated.verdict.status);
      bool derived_holds = false;
      std::string derived_text = "no antiderivative";
      if (potential) {
        const Expr h = half * up * up + *potential;
        const auto derived = first_integral_check(ode, h, {}, zero);
        note_status(result, derived.verdict.status);
        derived_holds = derived.holds;
        derived_text = to_text(h) + " = h";
      }
      add_check(result, "oscillator first integral, g = u^2, f = u (adjudicated)",
                derived_holds && stated.verdict.status != ZeroStatus::Undecided,
                std::string("stated form ") + (stated.holds ? "holds" : "fails") + "; " +
                    derived_text);
      if (!stated.holds) {
        result.notices.push_back({"1+1 travelling waves, oscillator case",
                                  "1/2 U'^2 - 1/2 U^2 = h", derived_text,
                                  "the equation U'' + 2 U^3 = 0 has a quartic potential"});
      }
    }
  });
}

// ------------------------------------------------------------ criterion 8

namespace {

struct SuiteOutcome {
  std::string name;
  int instances = 0;
  int failures = 0;
  bool undecided = false;
  std::string first_failure;
};

template <class Instance>
SuiteOutcome run_suite(std::string name, int count, Instance instance) {
  SuiteOutcome out;
  out.name = std::move(name);
  for (int i = 0; i < count; ++i) {
    std::string why;
    ZeroStatus status = ZeroStatus::IdenticallyZero;
    const bool ok = instance(i, why, status);
    ++out.instances;
    if (status == ZeroStatus::Undecided) out.undecided = true;
    if (!ok) {
      if (out.failures == 0) out.first_failure = "instance " + std::to_string(i) + ": " + why;
      ++out.failures;
    }
  }
  return out;
}

bool zero_or_report(const Expr& e, const ZeroTestOptions& options, std::string& why,
                    ZeroStatus& status) {
  const auto verdict = is_zero(e, {}, options);
  if (verdict.status != ZeroStatus::IdenticallyZero) {
    status = verdict.status;
    why = to_string(verdict.status) + ": " + to_text(verdict.residual);
    return false;
  }
  return true;
}

std::vector<LieAlgebra> computed_algebras() {
  std::vector<LieAlgebra> out;
  out.push_back(algebra_for("gze1", "", {"X1", "X2"}));
  out.push_back(algebra_for("gze2", "", {"Y1", "Y2", "Y3", "Y4"}));
  for (const auto& entry : stated_cases()) {
    if (entry.pde == "gze1") {
      out.push_back(algebra_for("gze1", entry.id, {"X1", "X2", "XA"}));
    } else {
      out.push_back(algebra_for("gze2", entry.id, {"Y1", "Y2", "Y3", "Y4", "YA"}));
    }
  }
  return out;
}

RandomExprOptions field_options() {
  RandomExprOptions options;
  options.depth = 2;
  options.max_jet_order = 0;
  return options;
}

}  // namespace

CriterionResult check_properties(const AcceptanceOptions& options) {
  return guarded(8, "Property suites", [&](CriterionResult& result) {
    const ZeroTestOptions& zero = options.zero;
    const int count = options.instances;
    const std::uint64_t base = zero.seed;
    std::vector<std::function<SuiteOutcome()>> suites;

    suites.emplace_back([&] {
      const JetSpace space = JetSpace::space();
      ExprGenerator gen(space, base + 1);
      return run_suite("total-derivative commutation", count,
                       [&](int, std::string& why, ZeroStatus& status) {
                         const Expr e = gen.expression();
                         const std::string a = gen.variable();
                         const std::string b = gen.variable();
                         const Expr ab = total_derivative(total_derivative(e, a, space), b, space);
                         const Expr ba = total_derivative(total_derivative(e, b, space), a, space);
                         return zero_or_report(ab - ba, zero, why, status);
                       });
    });

    suites.emplace_back([&] {
      const JetSpace space = JetSpace::plane();
      ExprGenerator gen(space, base + 2, field_options());
      return run_suite("prolongation linearity", count,
                       [&](int, std::string& why, ZeroStatus& status) {
                         const VectorField x = gen.field();
                         const VectorField y = gen.field();
                         const Expr cx(gen.rational());
                         const Expr cy(gen.rational());
                         const auto combined = prolong(cx * x + cy * y, 2, space);
                         const auto px = prolong(x, 2, space);
                         const auto py = prolong(y, 2, space);
                         for (const auto& [index, eta] : combined.eta) {
                           const Expr gap = eta - cx * px.coefficient(index) -
                                            cy * py.coefficient(index);
                           if (!zero_or_report(gap, zero, why, status)) return false;
                         }
                         return true;
                       });
    });

    suites.emplace_back([&] {
      const JetSpace space = JetSpace::plane();
      ExprGenerator gen(space, base + 3, field_options());
      return run_suite("prolonged bracket", count,
                       [&](int, std::string& why, ZeroStatus& status) {
                         const VectorField x = gen.field();
                         const VectorField y = gen.field();
                         const auto pz = prolong(commutator(x, y, space), 2, space);
                         const auto px = prolong(x, 2, space);
                         const auto py = prolong(y, 2, space);
                         for (const auto& [index, eta] : pz.eta) {
                           if (index.empty()) continue;
                           const Expr bracket = apply(px, py.coefficient(index), space) -
                                                apply(py, px.coefficient(index), space);
                           if (!zero_or_report(eta - bracket, zero, why, status)) return false;
                         }
                         return true;
                       });
    });

    suites.emplace_back([&] {
      const JetSpace space = JetSpace::space();
      ExprGenerator gen(space, base + 4, field_options());
      return run_suite("commutator antisymmetry", count,
                       [&](int, std::string& why, ZeroStatus& status) {
                         const VectorField x = gen.field();
                         const VectorField y = gen.field();
                         const VectorField sum = commutator(x, y, space) + commutator(y, x, space);
                         for (const auto& c : sum.components()) {
                           if (!zero_or_report(c, zero, why, status)) return false;
                         }
                         return true;
                       });
    });

    suites.emplace_back([&] {
      const JetSpace space = JetSpace::plane();
      ExprGenerator gen(space, base + 5, field_options());
      const auto algebras = computed_algebras();
      return run_suite("Jacobi identity", count,
                       [&](int i, std::string& why, ZeroStatus& status) {
                         if (static_cast<std::size_t>(i) < algebras.size()) {
                           const auto& algebra = algebras[static_cast<std::size_t>(i)];
                           if (!satisfies_jacobi(algebra) || !antisymmetric(algebra)) {
                             why = "structure constants of " + identify(algebra).label;
                             return false;
                           }
                         }
                         const VectorField x = gen.field();
                         const VectorField y = gen.field();
                         const VectorField z = gen.field();
                         const VectorField sum =
                             commutator(x, commutator(y, z, space), space) +
                             commutator(y, commutator(z, x, space), space) +
                             commutator(z, commutator(x, y, space), space);
                         for (const auto& c : sum.components()) {
                           if (!zero_or_report(c, zero, why, status)) return false;
                         }
                         return true;
                       });
    });

    suites.emplace_back([&] {
      const auto algebras = computed_algebras();
      ExprGenerator gen(JetSpace::plane(), base + 6);
      const Expr eps = Expr::symbol("eps");
      return run_suite("adjoint group law and eps-derivative", count,
                       [&](int, std::string& why, ZeroStatus& status) {
                         const auto& algebra = algebras[static_cast<std::size_t>(
                             gen.integer(0, static_cast<int>(algebras.size()) - 1))];
                         const auto n = static_cast<Eigen::Index>(algebra.dimension());
                         const auto i = static_cast<std::size_t>(gen.integer(0, static_cast<int>(n) - 1));
                         const Expr e1(gen.rational());
                         const Expr e2(gen.rational());
                         const ExprMatrix m1 = adjoint_matrix(algebra, i, e1);
                         const ExprMatrix m2 = adjoint_matrix(algebra, i, e2);
                         const ExprMatrix m12 = adjoint_matrix(algebra, i, e1 + e2);
                         const ExprMatrix shifted = adjoint_matrix(algebra, i, eps + e1);
                         const RationalMatrix ad = algebra.ad(i);
                         for (Eigen::Index r = 0; r < n; ++r) {
                           for (Eigen::Index c = 0; c < n; ++c) {
                             Expr product(0);
                             Expr flow(0);
                             for (Eigen::Index k = 0; k < n; ++k) {
                               product = product + m1(r, k) * m2(k, c);
                               flow = flow + Expr(ad(r, k)) * shifted(k, c);
                             }
                             if (!zero_or_report(product - m12(r, c), zero, why, status)) {
                               why = "group law: " + why;
                               return false;
                             }
                             if (!zero_or_report(diff(shifted(r, c), eps) + flow, zero, why,
                                                 status)) {
                               why = "eps-derivative: " + why;
                               return false;
                             }
                           }
                         }
                         return true;
                       });
    });

    suites.emplace_back([&] {
      const JetSpace space = JetSpace::plane();
      ExprGenerator gen(space, base + 7);
      const double tolerance = options.fd_tolerance;
      return run_suite(
          "finite-difference derivative", count, [&](int i, std::string& why, ZeroStatus&) {
            for (int attempt = 0; attempt < 64; ++attempt) {
              const Expr e = gen.expression();
              std::vector<Expr> atoms;
              for (const auto& atom : leaf_atoms(e)) {
                if (atom.is(Kind::Symbol) || atom.is(Kind::Jet)) atoms.push_back(atom);
              }
              if (atoms.empty()) continue;
              const Expr var = atoms[static_cast<std::size_t>(
                  gen.integer(0, static_cast<int>(atoms.size()) - 1))];
              const Expr derivative = diff(e, var);
              NumericPoint point = random_point(
                  {e, derivative}, base + 7 + static_cast<std::uint64_t>(i) * 131 + attempt, zero);
              const double at = point.leaves[var];
              const double h = 1e-3 * std::max(1.0, std::abs(at));
              auto value = [&](double offset) {
                point.leaves[var] = at + offset;
                return evaluate(e, point);
              };
              const double stencil =
                  (-value(2 * h) + 8 * value(h) - 8 * value(-h) + value(-2 * h)) / (12 * h);
              point.leaves[var] = at;
              const double exact = evaluate(derivative, point);
              if (!std::isfinite(stencil) || !std::isfinite(exact)) continue;
              const double error = std::abs(stencil - exact);
              if (error <= tolerance * std::max(1.0, std::abs(exact))) return true;
              std::ostringstream out;
              out << "d/d" << to_text(var) << " of " << to_text(e) << ": exact " << exact
                  << ", stencil " << stencil;
              why = out.str();
              return false;
            }
            why = "no finite sample point";
            return false;
          });
    });

    std::vector<SuiteOutcome> outcomes;
    if (options.parallel) {
      std::vector<std::future<SuiteOutcome>> pending;
      for (auto& suite : suites) pending.push_back(std::async(std::launch::async, suite));
      for (auto& p : pending) outcomes.push_back(p.get());
    } else {
      for (auto& suite : suites) outcomes.push_back(suite());
    }
    for (const auto& outcome : outcomes) {
      if (outcome.undecided) result.undecided = true;
      std::ostringstream detail;
      detail << outcome.instances - outcome.failures << "/" << outcome.instances << " instances";
      if (outcome.failures > 0) detail << "; " << outcome.first_failure;
      add_check(result, outcome.name, outcome.failures == 0 && outcome.instances >= count,
                detail.str());
    }
  });
}

// ------------------------------------------------------------ harness

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  switch (id) {
    case 1:
      return check_symmetries(options);
    case 2:
      return check_classification(options);
    case 3:
      return check_tables(options);
    case 4:
      return check_identification(options);
    case 5:
      return check_optimal_systems(options);
    case 6:
      return check_reductions(options);
    case 7:
      return check_solutions(options);
    case 8:
      return check_properties(options);
    default:
      throw std::invalid_argument("criteria are numbered 1 to 8");
  }
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CriterionResult> results;
  if (!options.parallel) {
    for (int id = 1; id <= 8; ++id) results.push_back(run_criterion(id, options));
    return results;
  }
  std::vector<std::future<CriterionResult>> pending;
  for (int id = 1; id <= 8; ++id) {
    pending.push_back(std::async(std::launch::async, run_criterion, id, std::cref(options)));
  }
  for (auto& p : pending) results.push_back(p.get());
  return results;
}

nlohmann::json to_json(const CriterionResult& result) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : result.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  nlohmann::json notices = nlohmann::json::array();
  for (const auto& n : result.notices) {
    notices.push_back(
        {{"location", n.location}, {"stated", n.stated}, {"derived", n.derived}, {"note", n.note}});
  }
  return {{"criterion", result.id},   {"title", result.title},
          {"passed", result.passed},  {"undecided", result.undecided},
          {"checks", checks},         {"notices", notices}};
}

nlohmann::json to_json(const std::vector<CriterionResult>& results) {
  nlohmann::json criteria = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    criteria.push_back(to_json(r));
    all = all && r.passed;
  }
  return {{"passed", all}, {"criteria", criteria}};
}

std::string scorecard(const std::vector<CriterionResult>& results, bool with_checks) {
  std::ostringstream out;
  for (const auto& r : results) {
    const auto passed = std::count_if(r.checks.begin(), r.checks.end(),
                                      [](const Check& c) { return c.passed; });
    out << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.title << " ("
        << passed << "/" << r.checks.size() << " checks"
        << (r.notices.empty() ? "" : ", " + std::to_string(r.notices.size()) + " notices")
        << (r.undecided ? ", undecided verdicts" : "") << ")\n";
  }
  for (const auto& r : results) {
    bool header = false;
    auto open = [&] {
      if (!header) out << "\ncriterion " << r.id << ": " << r.title << "\n";
      header = true;
    };
    for (const auto& c : r.checks) {
      if (c.passed && !with_checks) continue;
      open();
      out << "  " << (c.passed ? "ok    " : "FAILED") << " " << c.name;
      if (!c.detail.empty()) out << " -- " << c.detail;
      out << "\n";
    }
    for (const auto& n : r.notices) {
      open();
      out << "  notice [" << n.location << "] stated: " << n.stated << "; derived: " << n.derived;
      if (!n.note.empty()) out << " (" << n.note << ")";
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace liesym
