#include "liesym/classify.hpp"

#include <algorithm>

#include "liesym/calculus.hpp"
#include "liesym/linear_solve.hpp"

namespace liesym {

namespace {

bool is_g_atom(const Expr& e) { return e.is(Kind::Func) && e.name() == "g"; }

bool contains_g(const Expr& e) {
  const auto atoms = function_atoms(e);
  return std::any_of(atoms.begin(), atoms.end(), is_g_atom);
}

int highest_g_order(const Expr& e) {
  int order = -1;
  for (const auto& atom : function_atoms(e)) {
    if (is_g_atom(atom)) order = std::max(order, atom.order());
  }
  return order;
}

VectorField substitute(const VectorField& field, const ExprMap<Expr>& values) {
  std::vector<Expr> xi;
  for (const auto& c : field.xi) xi.push_back(expand(subs(c, values)));
  return VectorField(std::move(xi), expand(subs(field.eta, values)));
}

void append_unique(std::vector<Expr>& list, const Expr& e) {
  if (std::find(list.begin(), list.end(), e) == list.end()) list.push_back(e);
}

}  // namespace

Expr scaling_weight() { return Expr::symbol("alpha1"); }
Expr shift_weight() { return Expr::symbol("alpha2"); }

Ansatz affine_ansatz(const JetSpace& space) {
  Ansatz ansatz;
  std::vector<Expr> xi;
  for (const auto& v : space.variables) {
    ansatz.unknowns.push_back(Expr::symbol("c_" + v + "0"));
  }
  for (std::size_t k = 0; k < space.dimension(); ++k) {
    std::vector<Expr> terms{ansatz.unknowns[k]};
    for (const auto& w : space.variables) {
      const Expr c = Expr::symbol("c_" + space.variables[k] + w);
      ansatz.unknowns.push_back(c);
      terms.push_back(mul({c, Expr::symbol(w)}));
    }
    xi.push_back(add(std::move(terms)));
  }
  const Expr c_uu = Expr::symbol("c_uu");
  const Expr c_u0 = Expr::symbol("c_u0");
  ansatz.unknowns.push_back(c_uu);
  ansatz.unknowns.push_back(c_u0);
  ansatz.field = VectorField(std::move(xi), add({mul({c_uu, space.coordinate({})}), c_u0}));
  return ansatz;
}

bool ClassificationBranch::verified() const {
  return !verdicts.empty() &&
         std::all_of(verdicts.begin(), verdicts.end(),
                     [](const SymmetryVerdict& v) { return v.passed(); });
}

Pde with_g(const Pde& pde, const Expr& g) {
  Pde out = pde;
  out.g = g;
  out.residual = expand(substitute_function(pde.residual, "g", g, pde.space.coordinate({})));
  return out;
}

Classification classify(const Pde& pde, const ZeroTestOptions& options) {
  for (const auto& atom : function_atoms(pde.f)) {
    if (atom.name() == "f") throw PdeError("classify needs a concrete f, e.g. u^K or exp(K*u)");
  }
  const JetSpace& space = pde.space;
  const Expr u = space.coordinate({});
  const bool abstract_g = contains_g(pde.residual);

  Classification result;
  result.pde = pde.name;
  result.f = pde.f;
  result.ansatz = affine_ansatz(space);
  const auto& unknowns = result.ansatz.unknowns;

  const AtomPredicate is_coordinate = [&space](const Expr& a) {
    return a.is(Kind::Symbol) && space.has_variable(a.name());
  };
  const AtomPredicate is_u = [&u](const Expr& a) { return a == u; };

  // Equations that hold whatever g is, and the full coefficients that
  // involve g.
  std::vector<Expr> free_equations;
  std::vector<Expr> g_coefficients;
  const DeterminingSystem system = determining_equations(pde, result.ansatz.field);
  for (const auto& eq : system.equations) {
    for (const auto& [mono, c] : split_by(eq, is_coordinate)) {
      bool involves_g = false;
      for (const auto& [key, coeff] : split_by(c, is_u)) {
        if (contains_g(key)) {
          involves_g = true;
        } else {
          free_equations.push_back(coeff);
        }
      }
      if (involves_g) g_coefficients.push_back(c);
    }
  }

  AssumptionLedger ledger = pde.ledger;
  const LinearSolution base = solve_linear(free_equations, unknowns, ledger);
  for (const auto& a : base.assumptions) append_unique(result.assumptions, a);

  std::vector<Expr> reduced;
  std::vector<Expr> generic_equations;
  for (const auto& c : g_coefficients) {
    const Expr r = base.apply(c);
    if (r.is_zero()) continue;
    reduced.push_back(r);
    for (const auto& [key, coeff] : split_by(r, is_u)) generic_equations.push_back(coeff);
  }
  const LinearSolution generic =
      solve_linear(generic_equations, base.free, ledger, {.reverse_order = true});
  for (const auto& a : generic.assumptions) append_unique(result.assumptions, a);
  for (const auto& a : result.assumptions) ledger.assume_nonzero(a, "generic parameter value");

  // Completes an assignment of the free unknowns of `base` to a field.
  auto instantiate = [&](const ExprMap<Expr>& values) {
    ExprMap<Expr> all = values;
    for (const auto& [pivot, e] : base.pivots) all[pivot] = expand(subs(e, values));
    return substitute(result.ansatz.field, all);
  };

  const std::string prefix = space.dimension() == 2 ? "X" : "Y";
  std::vector<VectorField> generic_fields;
  for (const auto& x : generic.free) {
    ExprMap<Expr> values;
    for (const auto& y : generic.free) values[y] = y == x ? Expr(1) : Expr(0);
    for (const auto& [pivot, e] : generic.pivots) values[pivot] = expand(subs(e, values));
    generic_fields.push_back(instantiate(values));
  }
  // Translations first.
  std::stable_partition(generic_fields.begin(), generic_fields.end(), [&](const VectorField& v) {
    const auto comps = v.components();
    return std::none_of(comps.begin(), comps.end(),
                        [&](const Expr& c) { return depends_on(c, is_coordinate) || depends_on(c, is_u); });
  });
  std::vector<std::string> generic_names;
  for (std::size_t i = 0; i < generic_fields.size(); ++i) {
    generic_names.push_back(prefix + std::to_string(i + 1));
  }

  auto finish = [&](ClassificationBranch& branch, const AssumptionLedger& branch_ledger) {
    const Pde target = abstract_g && branch.family != "raw" ? with_g(pde, branch.g) : pde;
    for (const auto& field : branch.generators) {
      branch.verdicts.push_back(verify_symmetry(target, field, branch_ledger, options));
    }
    try {
      branch.algebra = identify(structure_constants(space, branch.generators, branch.names));
    } catch (const LieAlgebraError& e) {
      branch.algebra.label = "unrecognized";
      branch.algebra.latex = "\\text{unrecognized}";
    }
  };

  ClassificationBranch baseline;
  baseline.family = abstract_g ? "generic" : "given";
  baseline.g = pde.g;
  baseline.generators = generic_fields;
  baseline.names = generic_names;
  baseline.assumptions = result.assumptions;
  finish(baseline, ledger);
  result.branches.push_back(std::move(baseline));
  if (!abstract_g || generic.pivots.empty()) return result;

  // The pivots of the generic solve span the extra generators: the first
  // coordinate coefficient is normalized to 1, the u-coefficients become
  // weights.
  const Expr c_uu = unknowns[unknowns.size() - 2];
  const Expr c_u0 = unknowns.back();
  ExprMap<Expr> values;
  for (const auto& x : generic.free) values[x] = Expr(0);
  bool lead_set = false;
  std::vector<Expr> weights;
  for (const auto& x : unknowns) {
    if (!generic.pivots.count(x)) continue;
    if (x == c_uu) {
      values[x] = scaling_weight();
      weights.push_back(scaling_weight());
    } else if (x == c_u0) {
      values[x] = shift_weight();
      weights.push_back(shift_weight());
    } else if (!lead_set) {
      values[x] = Expr(1);
      lead_set = true;
    } else {
      const Expr w = Expr::symbol("w_" + x.name());
      values[x] = w;
      weights.push_back(w);
    }
  }
  const VectorField extra = instantiate(values);
  const std::string extra_name = prefix + std::to_string(generic_fields.size() + 1);

  std::vector<Expr> conditions;
  for (const auto& r : reduced) {
    const Expr c = expand(subs(r, values));
    if (!c.is_zero()) conditions.push_back(c);
  }
  if (conditions.empty()) return result;
  const Expr lowest = *std::min_element(
      conditions.begin(), conditions.end(),
      [](const Expr& a, const Expr& b) { return highest_g_order(a) < highest_g_order(b); });

  const Expr g1 = Expr::symbol("g1");
  const Expr g0 = Expr::symbol("g0");
  const Expr first = Expr::func("g", 1, u);
  const Expr second = Expr::func("g", 2, u);

  auto make_branch = [&](std::string family, Expr g, Expr exponent,
                         std::vector<std::pair<Expr, Expr>> constraints) {
    ClassificationBranch branch;
    branch.family = std::move(family);
    branch.g = std::move(g);
    branch.exponent = std::move(exponent);
    branch.constraints = std::move(constraints);
    ExprMap<Expr> fixed;
    for (const auto& [w, value] : branch.constraints) fixed[w] = value;
    branch.generators = generic_fields;
    branch.generators.push_back(substitute(extra, fixed));
    branch.names = generic_names;
    branch.names.push_back(extra_name);
    branch.assumptions = result.assumptions;
    AssumptionLedger branch_ledger = ledger;
    branch_ledger.assume_nonzero(g1, "g must depend on u");
    for (const auto& w : weights) {
      if (!fixed.count(w)) {
        branch_ledger.assume_nonzero(w, "weight of the extra generator");
        append_unique(branch.assumptions, w);
      }
    }
    if (!branch.exponent.is_zero() && !branch.exponent.is_number()) {
      branch_ledger.assume_nonzero(branch.exponent, "g must depend on u");
      append_unique(branch.assumptions, branch.exponent);
    }
    finish(branch, branch_ledger);
    result.branches.push_back(std::move(branch));
  };

  // The special value of a weight that makes `e` vanish, if any.
  auto weight_root = [&](const Expr& e) -> std::optional<std::pair<Expr, Expr>> {
    for (const auto& w : weights) {
      if (auto sol = solve_for(e, w)) return std::make_pair(w, sol->value);
    }
    return std::nullopt;
  };

  ExprMap<Expr> parts;
  bool ode = highest_g_order(lowest) == 2;
  if (ode) {
    try {
      parts = collect(lowest, {first, second});
    } catch (const std::invalid_argument&) {
      ode = false;
    }
  }
  auto part = [&](const Expr& key) {
    auto it = parts.find(key);
    return it == parts.end() ? Expr(0) : it->second;
  };
  const Expr a2 = ode ? part(second) : Expr(0);
  const Expr a1 = ode ? part(first) : Expr(0);
  if (!ode || a2.is_zero() || !part(Expr(1)).is_zero()) {
    ClassificationBranch raw;
    raw.family = "raw";
    raw.g = pde.g;
    raw.condition = lowest;
    raw.generators = generic_fields;
    raw.generators.push_back(extra);
    raw.names = generic_names;
    raw.names.push_back(extra_name);
    raw.assumptions = result.assumptions;
    result.branches.push_back(std::move(raw));
    return result;
  }

  // g'' / g' = ratio.
  const Expr ratio = canonical_rational(-a1 / a2);
  const Expr scaled = canonical_rational(ratio * u);
  if (ratio.is_zero()) {
    make_branch("linear", g0 + g1 * u, Expr(1), {});
  } else if (!depends_on(scaled, u)) {
    const Expr m = canonical_rational(scaled + Expr(1));
    make_branch("power", g0 + g1 * pow(u, m), m, {});
    if (auto root = weight_root(m)) make_branch("log", g0 + g1 * log(u), Expr(0), {*root});
  } else if (!depends_on(ratio, u)) {
    make_branch("exponential", g0 + g1 * exp(ratio * u), ratio, {});
    if (auto root = weight_root(ratio)) make_branch("linear", g0 + g1 * u, Expr(1), {*root});
  } else {
    ClassificationBranch raw;
    raw.family = "raw";
    raw.g = pde.g;
    raw.condition = lowest;
    raw.generators = generic_fields;
    raw.generators.push_back(extra);
    raw.names = generic_names;
    raw.names.push_back(extra_name);
    raw.assumptions = result.assumptions;
    result.branches.push_back(std::move(raw));
  }
  return result;
}

}  // namespace liesym
