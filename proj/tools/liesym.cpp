#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "liesym/acceptance.hpp"
#include "liesym/catalog.hpp"
#include "liesym/classify.hpp"
#include "liesym/lie_algebra.hpp"
#include "liesym/parse.hpp"
#include "liesym/pde.hpp"
#include "liesym/reduction.hpp"
#include "liesym/render.hpp"

namespace {

using namespace liesym;
using nlohmann::json;

constexpr int kPass = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kUndecided = 3;

struct Settings {
  std::string pde = "gze1";
  std::string case_id;
  std::string field;
  std::string subalgebra;
  std::string f;
  std::string g;
  std::string solution;
  std::string format = "text";
  std::uint64_t seed = 20240611;
  int samples = 16;
  double tolerance = 1e-9;

  ZeroTestOptions zero() const {
    ZeroTestOptions options;
    options.seed = seed;
    options.samples = samples;
    options.tolerance = tolerance;
    return options;
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  std::string command;
  json data = json::object();
  std::ostringstream text;
  std::ostringstream latex;
  std::vector<Notice> notices;
  bool failed = false;
  bool undecided = false;

  void note(ZeroStatus status) {
    if (status == ZeroStatus::Undecided) undecided = true;
  }
  int exit_code() const { return failed ? kFailure : undecided ? kUndecided : kPass; }
  std::string result() const { return failed ? "fail" : undecided ? "undecided" : "pass"; }
};

// ------------------------------------------------------------ inputs

void require_pde(const Settings& s) {
  if (s.pde != "gze1" && s.pde != "gze2") throw UsageError("--pde must be gze1 or gze2");
  if (!s.case_id.empty()) {
    const auto ids = case_ids(s.pde);
    if (std::find(ids.begin(), ids.end(), s.case_id) == ids.end()) {
      std::string list;
      for (const auto& id : ids) list += " " + id;
      throw UsageError("--case for " + s.pde + " must be one of" + list);
    }
  }
}

const CaseEntry* case_of(const Settings& s) {
  return s.case_id.empty() ? nullptr : &stated_case(s.pde, s.case_id);
}

Expr parse_user(const std::string& text, const JetSpace& space) {
  try {
    return parse(text, space.parse_options());
  } catch (const ParseError& error) {
    throw UsageError("cannot parse '" + text + "': " + error.what());
  }
}

/// The equation selected by --pde, --case, --f and --g; flags override the
/// case's f and g.
Pde equation(const Settings& s) {
  const JetSpace space = space_of(s.pde);
  const CaseEntry* entry = case_of(s);
  Pde base = entry ? case_pde(*entry) : generic_pde(s.pde);
  if (s.f.empty() && s.g.empty()) return base;
  const Expr f = s.f.empty() ? base.f : parse_user(s.f, space);
  const Expr g = s.g.empty() ? base.g : parse_user(s.g, space);
  Pde out = s.pde == "gze1" ? make_gze1(f, g) : make_gze2(f, g);
  out.ledger.merge(base.ledger);
  return out;
}

std::vector<NamedField> basis_of(const Settings& s) {
  const CaseEntry* entry = case_of(s);
  return entry ? case_basis(*entry, entry->generator_name) : base_generators(s.pde);
}

VectorField field_of(const std::string& text, const std::vector<NamedField>& basis,
                     const JetSpace& space) {
  if (text.find(';') != std::string::npos) {
    try {
      return parse_vector_field(text, space);
    } catch (const std::exception& error) {
      throw UsageError("cannot parse field '" + text + "': " + error.what());
    }
  }
  try {
    return combination(text, basis, space);
  } catch (const std::exception& error) {
    throw UsageError("cannot read field '" + text + "': " + error.what());
  }
}

json notice_json(const Notice& n) {
  return {{"location", n.location}, {"stated", n.stated}, {"derived", n.derived}, {"note", n.note}};
}

std::string latex_name(const std::string& name) {
  const auto digit = std::find_if(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (digit == name.begin() || digit == name.end()) return name;
  return std::string(name.begin(), digit) + "_{" + std::string(digit, name.end()) + "}";
}

std::string combination_latex(const std::vector<Expr>& coefficients,
                              const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t k = 0; k < names.size(); ++k) {
    const Expr c = canonical_rational(coefficients[k]);
    if (c.is_zero()) continue;
    std::string term;
    if (c == Expr(1)) {
      term = latex_name(names[k]);
    } else if (c == Expr(-1)) {
      term = "-" + latex_name(names[k]);
    } else if (terms_of(c).size() > 1) {
      term = "\\left(" + to_latex(c) + "\\right)" + latex_name(names[k]);
    } else {
      term = to_latex(c) + "\\," + latex_name(names[k]);
    }
    if (!out.empty() && term.front() != '-') out += " + ";
    out += term;
  }
  return out.empty() ? "0" : out;
}

void grid(Report& report, const std::vector<std::string>& names,
          const std::vector<std::vector<std::string>>& cells,
          const std::vector<std::vector<std::string>>& latex_cells, const std::string& corner) {
  std::size_t width = corner.size();
  for (const auto& row : cells) {
    for (const auto& cell : row) width = std::max(width, cell.size());
  }
  for (const auto& name : names) width = std::max(width, name.size());
  auto pad = [&](const std::string& s) { return s + std::string(width - s.size() + 2, ' '); };
  report.text << pad(corner);
  for (const auto& name : names) report.text << pad(name);
  report.text << "\n";
  for (std::size_t i = 0; i < names.size(); ++i) {
    report.text << pad(names[i]);
    for (const auto& cell : cells[i]) report.text << pad(cell);
    report.text << "\n";
  }

  report.latex << "\\begin{tabular}{c|" << std::string(names.size(), 'c') << "}\n"
               << corner;
  for (const auto& name : names) report.latex << " & $" << latex_name(name) << "$";
  report.latex << " \\\\\n\\hline\n";
  for (std::size_t i = 0; i < names.size(); ++i) {
    report.latex << "$" << latex_name(names[i]) << "$";
    for (const auto& cell : latex_cells[i]) report.latex << " & $" << cell << "$";
    report.latex << " \\\\\n";
  }
  report.latex << "\\end{tabular}\n";
  report.data["names"] = names;
  report.data["cells"] = cells;
}

void add_comparison(Report& report, const CriterionResult& comparison) {
  for (const auto& check : comparison.checks) {
    if (!check.passed) report.failed = true;
    report.data["comparison"].push_back(
        {{"name", check.name}, {"passed", check.passed}, {"detail", check.detail}});
    report.text << (check.passed ? "matches " : "differs from ") << check.name << ": "
                << check.detail << "\n";
  }
  if (comparison.undecided) report.undecided = true;
  report.notices.insert(report.notices.end(), comparison.notices.begin(), comparison.notices.end());
}

// ------------------------------------------------------------ commands

void run_classify(const Settings& s, Report& report) {
  require_pde(s);
  const JetSpace space = space_of(s.pde);
  Settings generic = s;
  if (s.g.empty()) generic.g = "g(u)";
  const Pde pde = equation(generic);
  const Classification classification = classify(pde, s.zero());

  report.data["pde"] = s.pde;
  report.data["f"] = to_text(classification.f);
  report.text << "equation " << s.pde << " with f = " << to_text(classification.f) << "\n";
  report.latex << "\\begin{tabular}{llll}\nfamily & $g(u)$ & generators & algebra \\\\\n\\hline\n";
  json branches = json::array();
  for (const auto& branch : classification.branches) {
    json b{{"family", branch.family},
           {"g", to_text(branch.g)},
           {"algebra", branch.algebra.label},
           {"verified", branch.verified()}};
    if (!branch.exponent.is_zero()) b["exponent"] = to_text(branch.exponent);
    if (branch.family == "raw") b["condition"] = to_text(branch.condition);
    json constraints = json::array();
    for (const auto& [lhs, rhs] : branch.constraints) {
      constraints.push_back(to_text(lhs) + " = " + to_text(rhs));
    }
    b["constraints"] = constraints;
    json generators = json::array();
    std::string latex_generators;
    report.text << "\n" << branch.family << ": g(u) = " << to_text(branch.g) << "\n";
    for (const auto& c : constraints) report.text << "  constraint " << c.get<std::string>() << "\n";
    if (branch.family == "raw") report.text << "  condition " << to_text(branch.condition) << " = 0\n";
    for (std::size_t i = 0; i < branch.generators.size(); ++i) {
      const std::string text = operator_text(branch.generators[i], space);
      generators.push_back({{"name", branch.names[i]}, {"operator", text}});
      report.text << "  " << branch.names[i] << " = " << text << "\n";
      if (!latex_generators.empty()) latex_generators += ",\\ ";
      latex_generators += latex_name(branch.names[i]) + " = " + operator_latex(branch.generators[i], space);
    }
    report.text << "  algebra " << branch.algebra.label << ", "
                << (branch.verified() ? "verified" : "not verified") << "\n";
    for (const auto& verdict : branch.verdicts) report.note(verdict.status);
    if (!branch.verified()) report.failed = true;
    b["generators"] = generators;
    branches.push_back(b);
    report.latex << branch.family << " & $" << to_latex(branch.g) << "$ & $" << latex_generators
                 << "$ & $" << branch.algebra.latex << "$ \\\\\n";
  }
  report.latex << "\\end{tabular}\n";
  report.data["branches"] = branches;
}

void run_verify(const Settings& s, Report& report) {
  require_pde(s);
  if (s.field.empty()) throw UsageError("verify needs --field");
  const Pde pde = equation(s);
  const VectorField field = field_of(s.field, basis_of(s), pde.space);
  const SymmetryVerdict verdict = verify_symmetry(pde, field, pde.ledger, s.zero());
  report.note(verdict.status);
  if (verdict.status == ZeroStatus::Nonzero) report.failed = true;

  const std::string op = operator_text(field, pde.space);
  report.data["field"] = op;
  report.data["equations"] = verdict.equation_count;
  report.data["status"] = to_string(verdict.status);
  report.text << "field " << op << "\n"
              << verdict.equation_count << " determining equations, " << to_string(verdict.status)
              << "\n";
  report.latex << "$" << operator_latex(field, pde.space) << "$: " << to_string(verdict.status)
               << "\n";
  json failures = json::array();
  for (const auto& failure : verdict.failures) {
    failures.push_back({{"monomial", to_text(failure.monomial)},
                        {"coefficient", to_text(failure.coefficient)},
                        {"status", to_string(failure.verdict.status)}});
    report.text << "  coefficient of " << to_text(failure.monomial) << ": "
                << to_text(failure.coefficient) << "\n";
  }
  report.data["failures"] = failures;

  const CaseEntry* entry = case_of(s);
  if (entry && !verdict.passed() && s.f.empty() && s.g.empty()) {
    if (const auto admitted = admitted_generator(*entry, s.zero())) {
      report.notices.push_back({s.pde + " case " + entry->id,
                                operator_text(stated_generator(*entry).field, pde.space),
                                operator_text(*admitted, pde.space),
                                "generator admitted by the stated f and g"});
    }
  }
}

LieAlgebra algebra_of(const Settings& s, std::vector<std::string>& names) {
  std::vector<VectorField> fields;
  names.clear();
  for (const auto& b : basis_of(s)) {
    fields.push_back(b.field);
    names.push_back(b.name);
  }
  return structure_constants(space_of(s.pde), std::move(fields), names);
}

/// The stated table is tabulated for gze1 case A and gze2 case I only.
bool has_stated_table(const Settings& s) {
  return (s.pde == "gze1" && s.case_id == "A") || (s.pde == "gze2" && s.case_id == "I");
}

void run_commutators(const Settings& s, Report& report) {
  require_pde(s);
  std::vector<std::string> names;
  const LieAlgebra algebra = algebra_of(s, names);
  const std::size_t n = names.size();
  std::vector<std::vector<std::string>> cells(n), latex_cells(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cells[i].push_back(algebra.bracket_text(i, j));
      std::vector<Expr> c(algebra.constants[i][j].begin(), algebra.constants[i][j].end());
      latex_cells[i].push_back(combination_latex(c, names));
    }
  }
  grid(report, names, cells, latex_cells, "[ , ]");
  const Identification id = identify(algebra);
  report.data["algebra"] = id.label;
  report.text << "algebra " << id.label << "\n";
  if (has_stated_table(s)) add_comparison(report, compare_with_stated(stated_commutators(s.pde), false, s.zero()));
}

void run_adjoint(const Settings& s, Report& report) {
  require_pde(s);
  std::vector<std::string> names;
  const LieAlgebra algebra = algebra_of(s, names);
  const AdjointTable table = adjoint(algebra);
  const std::size_t n = names.size();
  std::vector<std::vector<std::string>> cells(n), latex_cells(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cells[i].push_back(table.entry_text(algebra, i, j));
      std::vector<Expr> c(n);
      for (std::size_t k = 0; k < n; ++k) {
        c[k] = table.matrices[i](static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
      }
      latex_cells[i].push_back(combination_latex(c, names));
    }
  }
  grid(report, names, cells, latex_cells, "Ad");
  if (has_stated_table(s)) add_comparison(report, compare_with_stated(stated_adjoint(s.pde), true, s.zero()));
}

void run_optimal_system(const Settings& s, Report& report) {
  require_pde(s);
  std::vector<std::string> names;
  const LieAlgebra algebra = algebra_of(s, names);
  const Identification id = identify(algebra);
  report.data["algebra"] = id.label;
  report.data["identification"] = id.summary();
  report.text << "algebra " << id.summary() << "\n";
  report.latex << "Algebra $" << id.latex << "$\n";

  const auto& systems = stated_optimal_systems();
  const auto stated = std::find_if(systems.begin(), systems.end(), [&](const StatedOptimalSystem& o) {
    return o.pde == s.pde && o.algebra == id.label && o.dimension == algebra.dimension();
  });
  if (stated == systems.end()) {
    report.text << "no tabulated optimal system for this algebra\n";
    return;
  }
  OptimalSystem system;
  ParseOptions parse_options;
  for (const auto& invariant : stated->invariants) system.invariants.push_back(parse(invariant, parse_options));
  report.latex << "\\begin{tabular}{ll}\nlabel & representative \\\\\n\\hline\n";
  json representatives = json::array();
  for (const auto& [label, text] : stated->representatives) {
    Representative representative{label, {}};
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) representative.coefficients.push_back(parse(item, parse_options));
    representatives.push_back({{"label", label}, {"coefficients", text}});
    report.text << "  " << label << "\n";
    report.latex << "$" << latex_name(label) << "$ & $"
                 << combination_latex(representative.coefficients, names) << "$ \\\\\n";
    system.representatives.push_back(std::move(representative));
  }
  report.latex << "\\end{tabular}\n";
  report.data["representatives"] = representatives;
  report.data["invariants"] = stated->invariants;
  for (const auto& invariant : stated->invariants) report.text << "invariant " << invariant << "\n";

  OptimalSystemOptions options;
  options.seed = s.seed;
  options.tolerance = s.tolerance;
  options.zero = s.zero();
  const OptimalSystemReport check = optimal_system_check(algebra, system, options);
  if (!check.passed() || !check.counterexamples.empty()) report.failed = true;
  report.data["invariants_ok"] = check.invariants_ok;
  report.data["inequivalence_ok"] = check.inequivalence_ok;
  report.data["completeness_ok"] = check.completeness_ok;
  report.data["trials"] = check.trials;
  report.data["counterexamples"] = check.counterexamples.size();
  report.text << "invariants " << (check.invariants_ok ? "ok" : "failed") << ", inequivalence "
              << (check.inequivalence_ok ? "ok" : "failed") << ", completeness "
              << (check.completeness_ok ? "ok" : "failed") << " (" << check.trials << " trials, "
              << check.counterexamples.size() << " counterexamples)\n";
  for (const auto& failure : check.invariant_failures) report.text << "  " << failure << "\n";
  for (const auto& note : check.inequivalence_notes) report.text << "  " << note << "\n";
  for (const auto& c : check.degenerate_counterexamples) {
    std::ostringstream vec;
    for (double x : c.vector) vec << x << " ";
    report.notices.push_back({"optimal system " + id.label + ", degenerate stratum",
                              "representatives as listed", vec.str(), c.reason});
  }
}

void run_reduce(const Settings& s, Report& report) {
  require_pde(s);
  if (s.field.empty() == s.subalgebra.empty()) throw UsageError("reduce needs one of --field or --subalgebra");
  Settings local = s;
  std::vector<std::string> texts;
  std::vector<NamedField> basis;
  if (!s.subalgebra.empty()) {
    if (s.pde != "gze2") throw UsageError("--subalgebra applies to gze2");
    const auto& all = stated_subalgebras();
    if (std::none_of(all.begin(), all.end(), [&](const StatedSubalgebra& a) { return a.name == s.subalgebra; })) {
      throw UsageError("unknown subalgebra " + s.subalgebra);
    }
    const StatedSubalgebra& sub = stated_subalgebra(s.subalgebra);
    texts = sub.fields;
    basis = base_generators("gze2");
    if (!sub.case_id.empty()) {
      if (local.case_id.empty()) local.case_id = sub.case_id;
      const CaseEntry& entry = stated_case("gze2", local.case_id);
      const auto admitted = admitted_generator(entry, s.zero());
      const VectorField stated = stated_generator(entry).field;
      if (!admitted) throw std::runtime_error("case " + entry.id + " admits no extra generator");
      if (!(*admitted == stated)) {
        report.notices.push_back({"subalgebra " + sub.name + ", case " + entry.id,
                                  operator_text(stated, space_of("gze2")),
                                  operator_text(*admitted, space_of("gze2")),
                                  "reduction uses the admitted generator as YA"});
      }
      basis.push_back({"YA", *admitted});
    }
  } else {
    texts = {s.field};
    basis = basis_of(local);
  }
  const Pde pde = equation(local);
  std::vector<VectorField> fields;
  for (const auto& text : texts) fields.push_back(field_of(text, basis, pde.space));

  const SimilarityMap map = invariants_for(fields, pde.space);
  AssumptionLedger ledger = pde.ledger;
  for (const auto& a : map.assumptions) ledger.assume_nonzero(a, "characteristic system");
  for (const auto& v : check_invariants(map, fields, pde.space, s.zero())) {
    report.note(v.status);
    if (v.status == ZeroStatus::Nonzero) report.failed = true;
  }
  const ReducedEquation eq = pullback(pde, map, ledger);

  json invariants = json::array();
  for (std::size_t i = 0; i < map.invariants.size(); ++i) {
    invariants.push_back({{"name", map.names[i]}, {"value", to_text(map.invariants[i])}});
    report.text << map.names[i] << " = " << to_text(map.invariants[i]) << "\n";
  }
  report.text << "u = " << to_text(map.rule) << "\n"
              << "reduced: " << to_text(eq.residual) << " = 0\n";
  report.latex << "u = " << to_latex(map.rule) << ", \\quad " << to_latex(eq.residual) << " = 0\n";
  report.data["invariants"] = invariants;
  report.data["rule"] = to_text(map.rule);
  report.data["reduced"] = to_text(eq.residual);
  json cancelled = json::array();
  for (const auto& c : eq.cancelled) cancelled.push_back(to_text(c));
  report.data["cancelled"] = cancelled;

  if (eq.space.dimension() == 1) {
    try {
      const ReducedEquation twice = integrate_twice(eq);
      report.data["integrated"] = to_text(twice.residual);
      report.text << "integrated: " << to_text(twice.residual) << " = 0\n";
    } catch (const ReductionError&) {
      report.data["integrated"] = nullptr;
    }
  }
}

void run_check_solution(const Settings& s, Report& report) {
  require_pde(s);
  if (s.solution.empty()) throw UsageError("check-solution needs --solution");
  const Pde pde = equation(s);
  const Expr candidate = parse_user(s.solution, pde.space);
  AssumptionLedger ledger = pde.ledger;
  for (const char* name : {"u0", "U0"}) ledger.assume_nonzero(Expr::symbol(name), "amplitude");
  const SolutionVerdict verdict = check_solution(pde.residual, pde.space, candidate, ledger, s.zero());
  report.note(verdict.check.status);
  if (verdict.status == SolutionStatus::Nonzero) report.failed = true;
  if (verdict.status == SolutionStatus::Undecided) report.undecided = true;

  report.data["candidate"] = to_text(candidate);
  report.data["status"] = to_string(verdict.status);
  json constraints = json::array();
  for (const auto& [lhs, rhs] : verdict.constraints) constraints.push_back(to_text(lhs) + " = " + to_text(rhs));
  report.data["constraints"] = constraints;
  json side = json::array();
  for (const auto& c : verdict.side_conditions) side.push_back(to_text(c) + " != 0");
  report.data["side_conditions"] = side;
  report.text << "u = " << to_text(candidate) << "\n" << verdict.summary() << "\n";
  if (!verdict.satisfied()) report.text << "residual " << to_text(verdict.residual) << "\n";
  report.latex << "u = " << to_latex(candidate) << ": " << verdict.summary() << "\n";
}

void run_reproduce(const Settings& s, Report& report) {
  AcceptanceOptions options;
  options.zero = s.zero();
  const auto results = run_acceptance(options);
  report.data = to_json(results);
  report.text << scorecard(results, true);
  report.latex << "\\begin{tabular}{rlll}\n & criterion & result & checks \\\\\n\\hline\n";
  for (const auto& r : results) {
    std::size_t passed = 0;
    for (const auto& c : r.checks) passed += c.passed ? 1 : 0;
    report.latex << r.id << " & " << r.title << " & " << (r.passed ? "pass" : "fail") << " & "
                 << passed << "/" << r.checks.size() << " \\\\\n";
    if (!r.passed) report.failed = true;
    if (r.undecided) report.undecided = true;
  }
  report.latex << "\\end{tabular}\n";
}

void emit(const Settings& s, const Report& report, bool notices_in_text) {
  if (s.format == "json") {
    json out = report.data;
    out["command"] = report.command;
    out["result"] = report.result();
    json notices = json::array();
    for (const auto& n : report.notices) notices.push_back(notice_json(n));
    if (!report.notices.empty() || !out.contains("notices")) out["notices"] = notices;
    std::cout << out.dump(2) << "\n";
    return;
  }
  if (s.format == "latex") {
    std::cout << "% " << report.command << "\n" << report.latex.str();
    return;
  }
  std::cout << "$ " << report.command << "\n" << report.text.str();
  if (notices_in_text) {
    for (const auto& n : report.notices) {
      std::cout << "notice [" << n.location << "] stated: " << n.stated << "; derived: " << n.derived
                << (n.note.empty() ? "" : " (" + n.note + ")") << "\n";
    }
  }
  std::cout << "result: " << report.result() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie point symmetries of generalized Zoomeron equations"};
  app.require_subcommand(1);
  Settings settings;

  struct Command {
    const char* name;
    const char* help;
    void (*body)(const Settings&, Report&);
  };
  const std::vector<Command> commands{
      {"classify", "Classify symmetries for a given f (g abstract unless --g)", run_classify},
      {"verify", "Check that a vector field is a point symmetry", run_verify},
      {"commutators", "Commutator table of the admitted generators", run_commutators},
      {"adjoint", "Adjoint representation table", run_adjoint},
      {"optimal-system", "Identify the algebra and check its optimal system", run_optimal_system},
      {"reduce", "Similarity reduction by a field or a tabulated subalgebra", run_reduce},
      {"check-solution", "Substitute a closed-form solution", run_check_solution},
      {"reproduce", "Run the acceptance suite and print a scorecard", run_reproduce},
  };
  std::vector<CLI::App*> subcommands;
  for (const auto& command : commands) {
    CLI::App* sub = app.add_subcommand(command.name, command.help);
    sub->add_option("--pde", settings.pde, "gze1 or gze2")->capture_default_str();
    sub->add_option("--case", settings.case_id, "A-D for gze1, I-IV for gze2");
    sub->add_option("--field", settings.field, "generator name, combination or components");
    sub->add_option("--subalgebra", settings.subalgebra, "A1..A5");
    sub->add_option("--f", settings.f, "f(u)");
    sub->add_option("--g", settings.g, "g(u)");
    sub->add_option("--solution", settings.solution, "candidate u(t, x[, y])");
    sub->add_option("--format", settings.format)->check(CLI::IsMember({"text", "json", "latex"}))->capture_default_str();
    sub->add_option("--seed", settings.seed, "zero-test seed")->capture_default_str();
    sub->add_option("--samples", settings.samples, "zero-test sample count")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--tol", settings.tolerance, "zero-test tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    subcommands.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? kPass : kUsage;
  }

  Report report;
  for (int i = 1; i < argc; ++i) report.command += (i > 1 ? " " : "") + std::string(argv[i]);
  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (!subcommands[i]->parsed()) continue;
    try {
      commands[i].body(settings, report);
    } catch (const UsageError& error) {
      std::cerr << "usage error: " << error.what() << "\n" << subcommands[i]->help();
      return kUsage;
    } catch (const std::exception& error) {
      std::cerr << commands[i].name << " failed: " << error.what() << "\n";
      return kFailure;
    }
    emit(settings, report, commands[i].body != run_reproduce);
    return report.exit_code();
  }
  return kUsage;
}
