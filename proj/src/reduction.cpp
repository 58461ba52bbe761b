#include "liesym/reduction.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "liesym/calculus.hpp"
#include "liesym/linear_solve.hpp"
#include "liesym/render.hpp"

namespace liesym {

namespace {

AtomPredicate variable_of(const JetSpace& space) {
  return [&space](const Expr& a) { return a.is(Kind::Symbol) && space.has_variable(a.name()); };
}

AtomPredicate atom_of(const JetSpace& space) {
  return [&space](const Expr& a) {
    return (a.is(Kind::Symbol) && space.has_variable(a.name())) ||
           (a.is(Kind::Jet) && a.name() == space.dependent);
  };
}

bool free_of(const Expr& e, const JetSpace& space) { return !depends_on(e, atom_of(space)); }

bool structurally_zero(const Expr& e) { return to_fraction(e).numerator.is_zero(); }

std::optional<Expr> constant_ratio(const Expr& image, const Expr& target, const JetSpace& space) {
  const Expr ratio = canonical_rational(image / target);
  if (free_of(ratio, space)) return ratio;
  return std::nullopt;
}

bool is_linear_in_variables(const Expr& e, const JetSpace& space) {
  for (std::size_t i = 0; i < space.dimension(); ++i) {
    if (!free_of(canonical_rational(diff(e, space.variable(i))), space)) return false;
  }
  return true;
}

bool is_variable_monomial(const Expr& e, const JetSpace& space) {
  for (const auto& factor : factors_of(e)) {
    if (factor.is_number()) continue;
    const auto [base, exponent] = as_power(factor);
    if (!(base.is(Kind::Symbol) && space.has_variable(base.name()))) return false;
    if (!free_of(exponent, space)) return false;
  }
  return true;
}

Expr normalize_linear(const Expr& invariant, const JetSpace& space) {
  Expr scale;
  for (std::size_t i = space.dimension(); i-- > 0;) {
    const Expr c = canonical_rational(diff(invariant, space.variable(i)));
    if (c.is_zero()) continue;
    if (c.is_number()) {
      scale = c;
      break;
    }
    if (scale.is_zero()) scale = c;
  }
  if (scale.is_zero()) return invariant;
  return canonical_rational(invariant / scale);
}

std::vector<std::string> invariant_names(const std::vector<Expr>& invariants,
                                         const JetSpace& space) {
  const std::vector<std::string> pool{"xi", "sigma", "zeta"};
  std::vector<std::string> names;
  for (const auto& inv : invariants) {
    if (inv.is(Kind::Symbol) && space.has_variable(inv.name())) {
      names.push_back(inv.name());
      continue;
    }
    std::string wanted = is_linear_in_variables(inv, space)    ? "xi"
                         : is_variable_monomial(inv, space) ? "sigma"
                                                            : "zeta";
    if (std::find(names.begin(), names.end(), wanted) != names.end()) {
      for (const auto& p : pool) {
        if (std::find(names.begin(), names.end(), p) == names.end()) {
          wanted = p;
          break;
        }
      }
    }
    names.push_back(wanted);
  }
  return names;
}

void finish_map(SimilarityMap& map, const JetSpace& space) {
  const Expr u = space.coordinate({});
  const Expr scale = canonical_rational(diff(map.dependent_invariant, u));
  if (scale.is_zero() || depends_on(scale, u)) {
    throw ReductionError("dependent invariant is not affine in " + space.dependent);
  }
  const Expr shift = canonical_rational(map.dependent_invariant - scale * u);
  if (depends_on(shift, u)) {
    throw ReductionError("dependent invariant is not affine in " + space.dependent);
  }
  map.reduced = JetSpace{map.names, "U", space.max_order};
  const Expr big_u = map.reduced.coordinate({});
  map.rule = expand(canonical_rational((big_u - shift) / scale));
}

void append_unique(std::vector<Expr>& list, const Expr& e) {
  if (e.is_number()) return;
  if (std::find(list.begin(), list.end(), e) == list.end()) list.push_back(e);
}

}  // namespace

SimilarityMap invariants_for(const std::vector<VectorField>& fields, const JetSpace& space) {
  const Expr u = space.coordinate({});
  std::vector<Expr> current;
  for (std::size_t i = 0; i < space.dimension(); ++i) current.push_back(space.variable(i));
  Expr dependent = u;
  SimilarityMap map;

  for (const auto& field : fields) {
    enum class Action { Zero, Shift, Scale };
    std::vector<Action> actions;
    std::vector<Expr> amounts;
    for (const auto& inv : current) {
      const Expr image = canonical_rational(apply(field, inv, space));
      if (image.is_zero()) {
        actions.push_back(Action::Zero);
        amounts.emplace_back(0);
      } else if (free_of(image, space)) {
        actions.push_back(Action::Shift);
        amounts.push_back(image);
      } else if (auto ratio = constant_ratio(image, inv, space)) {
        actions.push_back(Action::Scale);
        amounts.push_back(*ratio);
      } else {
        throw ReductionError("generator " + operator_text(field, space) +
                             " does not act on " + to_text(inv) +
                             " by a translation or scaling");
      }
    }
    std::size_t pivot = current.size();
    for (std::size_t i = 0; i < current.size() && pivot == current.size(); ++i) {
      if (actions[i] == Action::Shift) pivot = i;
    }
    for (std::size_t i = 0; i < current.size() && pivot == current.size(); ++i) {
      if (actions[i] == Action::Scale) pivot = i;
    }
    if (pivot == current.size()) {
      throw ReductionError("generator " + operator_text(field, space) +
                           " does not act on the independent variables");
    }
    // Parameter along the orbit: field(tau) = 1.
    const Expr tau = actions[pivot] == Action::Shift ? current[pivot] / amounts[pivot]
                                                     : log(current[pivot]) / amounts[pivot];
    append_unique(map.assumptions, amounts[pivot]);

    std::vector<Expr> next;
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (i == pivot) continue;
      switch (actions[i]) {
        case Action::Zero:
          next.push_back(current[i]);
          break;
        case Action::Shift:
          next.push_back(canonical_rational(current[i] - amounts[i] * tau));
          break;
        case Action::Scale:
          next.push_back(canonical_rational(current[i] * exp(-amounts[i] * tau)));
          break;
      }
    }

    const Expr image = canonical_rational(apply(field, dependent, space));
    const Expr weight = canonical_rational(diff(image, u) / diff(dependent, u));
    const Expr offset = canonical_rational(image - weight * dependent);
    if (!free_of(weight, space) || !free_of(offset, space)) {
      throw ReductionError("generator " + operator_text(field, space) + " does not act on " +
                           space.dependent + " affinely");
    }
    if (weight.is_zero()) {
      dependent = canonical_rational(dependent - offset * tau);
    } else {
      dependent = canonical_rational((dependent + offset / weight) * exp(-weight * tau));
    }
    current = std::move(next);
  }

  for (auto& inv : current) {
    if (is_linear_in_variables(inv, space)) inv = normalize_linear(inv, space);
    map.invariants.push_back(expand(inv));
  }
  map.names = invariant_names(map.invariants, space);
  map.dependent_invariant = expand(dependent);
  finish_map(map, space);
  return map;
}

SimilarityMap similarity_map(std::vector<Expr> invariants, std::vector<std::string> names,
                             const Expr& rule, const JetSpace& space) {
  if (invariants.size() != names.size()) {
    throw ReductionError("need one name per invariant");
  }
  SimilarityMap map;
  map.invariants = std::move(invariants);
  map.names = std::move(names);
  map.reduced = JetSpace{map.names, "U", space.max_order};
  const Expr big_u = map.reduced.coordinate({});
  const Expr scale = canonical_rational(diff(rule, big_u));
  if (scale.is_zero() || depends_on(scale, big_u)) {
    throw ReductionError("rule is not affine in U");
  }
  const Expr shift = canonical_rational(rule - scale * big_u);
  map.rule = expand(rule);
  map.dependent_invariant = expand(canonical_rational((space.coordinate({}) - shift) / scale));
  return map;
}

std::vector<ZeroVerdict> check_invariants(const SimilarityMap& map,
                                          const std::vector<VectorField>& fields,
                                          const JetSpace& space, const ZeroTestOptions& options) {
  std::vector<ZeroVerdict> out;
  for (const auto& field : fields) {
    for (const auto& inv : map.invariants) {
      out.push_back(is_zero(apply(field, inv, space), {}, options));
    }
    out.push_back(is_zero(apply(field, map.dependent_invariant, space), {}, options));
  }
  return out;
}

namespace {

struct Elimination {
  ExprMap<Expr> values;
  std::vector<Expr> assumptions;
  /// Original variables kept unchanged as reduced variables.
  std::set<std::string> kept;
};

bool kept_variable(const Expr& invariant, const std::string& name) {
  return invariant.is(Kind::Symbol) && invariant.name() == name;
}

/// Original variables that must disappear from the reduced equation.
AtomPredicate eliminated_of(const SimilarityMap& map, const JetSpace& space) {
  std::set<std::string> kept;
  for (std::size_t i = 0; i < map.invariants.size(); ++i) {
    if (kept_variable(map.invariants[i], map.names[i])) kept.insert(map.names[i]);
  }
  return [&space, kept](const Expr& a) {
    return a.is(Kind::Symbol) && space.has_variable(a.name()) && kept.count(a.name()) == 0;
  };
}

Elimination eliminate_variables(const SimilarityMap& map, const JetSpace& space) {
  std::vector<std::string> order;
  for (const auto& v : {"x", "y", "t"}) {
    if (space.has_variable(v)) order.emplace_back(v);
  }
  for (const auto& v : space.variables) {
    if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
  }
  Elimination out;
  std::set<std::string> used;
  for (std::size_t i = 0; i < map.invariants.size(); ++i) {
    if (kept_variable(map.invariants[i], map.names[i])) used.insert(map.names[i]);
  }
  for (std::size_t i = 0; i < map.invariants.size(); ++i) {
    if (kept_variable(map.invariants[i], map.names[i])) continue;
    const Expr target = expand(subs(map.invariants[i], out.values));
    const Expr reduced = Expr::symbol(map.names[i]);
    std::vector<std::string> candidates;
    for (const auto& v : order) {
      if (used.count(v) == 0 && canonical_rational(diff(target, Expr::symbol(v))).is_number() &&
          !canonical_rational(diff(target, Expr::symbol(v))).is_zero()) {
        candidates.push_back(v);
      }
    }
    for (const auto& v : order) {
      if (used.count(v) == 0 &&
          std::find(candidates.begin(), candidates.end(), v) == candidates.end()) {
        candidates.push_back(v);
      }
    }
    bool solved = false;
    for (const auto& v : candidates) {
      const Expr var = Expr::symbol(v);
      if (!depends_on(target, var)) continue;
      auto solution = solve_for(target - reduced, var);
      if (!solution) continue;
      for (auto& [key, value] : out.values) value = expand(subs(value, var, solution->value));
      out.values[var] = expand(solution->value);
      append_unique(out.assumptions, solution->assumption);
      used.insert(v);
      solved = true;
      break;
    }
    if (!solved) {
      throw ReductionError("cannot solve invariant " + to_text(map.invariants[i]) +
                           " for an original variable");
    }
  }
  return out;
}

/// Factors common to every term whose exponents differ by rational numbers,
/// at the smallest exponent.
std::vector<Expr> common_factors(const Expr& e) {
  const auto terms = terms_of(e);
  if (terms.empty()) return {};
  std::vector<std::pair<Expr, Expr>> common;
  for (const auto& f : factors_of(split_coefficient(terms.front()).second)) {
    if (f.is_number()) continue;
    common.push_back(as_power(f));
  }
  for (std::size_t k = 1; k < terms.size() && !common.empty(); ++k) {
    ExprMap<Expr> exponents;
    for (const auto& f : factors_of(split_coefficient(terms[k]).second)) {
      if (f.is_number()) continue;
      auto [base, exponent] = as_power(f);
      exponents[base] = exponent;
    }
    std::vector<std::pair<Expr, Expr>> kept;
    for (auto& [base, exponent] : common) {
      auto it = exponents.find(base);
      if (it == exponents.end()) continue;
      const Expr gap = canonical_rational(it->second - exponent);
      if (!gap.is_number()) continue;
      kept.emplace_back(base, gap.number().sign() < 0 ? it->second : exponent);
    }
    common = std::move(kept);
  }
  std::vector<Expr> out;
  for (const auto& [base, exponent] : common) out.push_back(pow(base, exponent));
  return out;
}

}  // namespace

ReducedEquation pullback(const Pde& pde, const SimilarityMap& map, const AssumptionLedger& ledger) {
  const JetSpace& space = pde.space;
  const JetSpace& reduced = map.reduced;
  const Expr u = space.coordinate({});

  std::vector<std::vector<Expr>> gradients(map.invariants.size());
  for (std::size_t i = 0; i < map.invariants.size(); ++i) {
    for (std::size_t v = 0; v < space.dimension(); ++v) {
      gradients[i].push_back(canonical_rational(diff(map.invariants[i], space.variable(v))));
    }
  }
  auto chain = [&](const Expr& e, std::size_t v) {
    std::vector<Expr> terms{diff(e, space.variable(v))};
    for (const auto& jet : jets_of(e)) {
      if (jet.name() != reduced.dependent) continue;
      const Expr partial = diff(e, jet);
      for (std::size_t i = 0; i < map.invariants.size(); ++i) {
        if (gradients[i][v].is_zero()) continue;
        terms.push_back(mul({partial, reduced.coordinate(extend_index(jet.index(), map.names[i])),
                             gradients[i][v]}));
      }
    }
    return expand(add(std::move(terms)));
  };

  std::map<MultiIndex, Expr> derivatives{{MultiIndex{}, map.rule}};
  std::function<Expr(const MultiIndex&)> derivative = [&](const MultiIndex& index) -> Expr {
    auto it = derivatives.find(index);
    if (it != derivatives.end()) return it->second;
    MultiIndex lower = index;
    const std::string last = lower.back();
    lower.pop_back();
    std::size_t v = 0;
    while (space.variables[v] != last) ++v;
    Expr value = chain(derivative(lower), v);
    derivatives.emplace(index, value);
    return value;
  };

  // The stored residual carries a factor f^3; divide it back out so that
  // reduced equations keep their conservation form.
  ExprMap<Expr> replacements;
  for (const auto& jet : jets_of(pde.residual)) {
    if (jet.name() == space.dependent) replacements[jet] = derivative(jet.index());
  }
  const Expr f_cubed = pow(subs(pde.f, u, map.rule), Expr(3));
  Expr pulled = expand(mul({subs(pde.residual, replacements), pow(f_cubed, Expr(-1))}));

  const Elimination elimination = eliminate_variables(map, space);
  pulled = expand(subs(pulled, elimination.values));

  AssumptionLedger nonzero = pde.ledger;
  nonzero.merge(ledger);
  for (const auto& a : map.assumptions) nonzero.assume_nonzero(a, "reduction");
  for (const auto& a : elimination.assumptions) nonzero.assume_nonzero(a, "reduction");

  ReducedEquation out{reduced, Expr(0), {}};
  const AtomPredicate eliminated = eliminated_of(map, space);
  const auto pieces = split_by(pulled, eliminated);
  if (pieces.empty()) return out;
  const auto& [first_key, first_value] = *pieces.begin();
  Expr leftover = first_key;
  for (auto it = std::next(pieces.begin()); it != pieces.end(); ++it) {
    auto factor = proportional(it->second, first_value, reduced, nonzero);
    if (!factor) {
      for (const auto& atom : leaf_atoms(it->first)) {
        if (eliminated(atom)) {
          throw ReductionError("reduction leaves a dependence on " + atom.name() +
                               "; the generators do not reduce this equation");
        }
      }
      throw ReductionError("reduction leaves a dependence on the original variables");
    }
    leftover = leftover + *factor * it->first;
  }
  out.cancelled.push_back(leftover);

  Expr residual = expand(first_value);
  for (const auto& factor : common_factors(residual)) {
    const auto [base, exponent] = as_power(factor);
    const bool reduced_variable = base.is(Kind::Symbol) && reduced.has_variable(base.name());
    const bool removable =
        free_of(factor, reduced) ? nonzero.known_nonzero(factor) : reduced_variable;
    if (!removable) continue;
    residual = expand(residual * pow(factor, Expr(-1)));
    out.cancelled.push_back(factor);
  }
  out.residual = residual;
  return out;
}

VectorField push_forward(const VectorField& field, const SimilarityMap& map,
                         const JetSpace& space) {
  const Elimination elimination = eliminate_variables(map, space);
  auto to_reduced = [&](const Expr& e) {
    const Expr value =
        canonical_rational(subs(subs(e, space.coordinate({}), map.rule), elimination.values));
    if (depends_on(value, eliminated_of(map, space))) {
      throw ReductionError("generator " + operator_text(field, space) +
                           " does not project to the reduced variables");
    }
    return value;
  };
  std::vector<Expr> xi;
  for (const auto& inv : map.invariants) xi.push_back(to_reduced(apply(field, inv, space)));
  return VectorField(std::move(xi), to_reduced(apply(field, map.dependent_invariant, space)));
}

Pde reduced_pde(const Pde& pde, const ReducedEquation& eq) {
  Pde out;
  out.name = pde.name + "_reduced";
  out.space = eq.space;
  const Expr big_u = eq.space.coordinate({});
  out.f = subs(pde.f, pde.space.coordinate({}), big_u);
  out.g = subs(pde.g, pde.space.coordinate({}), big_u);
  out.residual = eq.residual;
  int best = -1;
  for (const auto& jet : jets_of(eq.residual)) {
    if (jet.name() != eq.space.dependent || jet.order() <= best) continue;
    const Expr slope = expand(diff(eq.residual, jet));
    if (slope.is_zero() || depends_on(slope, jet)) continue;
    best = jet.order();
    out.leading = jet;
  }
  if (best < 0) throw ReductionError("reduced equation has no linear highest derivative");
  for (const auto& entry : pde.ledger.entries()) {
    out.ledger.assume_nonzero(subs(entry.expr, pde.space.coordinate({}), big_u), entry.reason);
  }
  return out;
}

std::optional<Expr> integrate(const Expr& e, const Expr& var) {
  if (!depends_on(e, var)) return e * var;
  if (e == var) return pow(var, Expr(2)) / Expr(2);
  switch (e.kind()) {
    case Kind::Add: {
      std::vector<Expr> parts;
      for (const auto& term : e.args()) {
        auto p = integrate(term, var);
        if (!p) return std::nullopt;
        parts.push_back(*p);
      }
      return add(std::move(parts));
    }
    case Kind::Mul: {
      std::vector<Expr> constant;
      std::vector<Expr> varying;
      for (const auto& f : e.args()) (depends_on(f, var) ? varying : constant).push_back(f);
      if (varying.size() == 1) {
        auto p = integrate(varying.front(), var);
        if (!p) return std::nullopt;
        constant.push_back(*p);
        return mul(std::move(constant));
      }
      const Expr expanded = expand(e);
      if (expanded == e) return std::nullopt;
      return integrate(expanded, var);
    }
    case Kind::Pow: {
      const Expr& base = e.arg(0);
      const Expr& exponent = e.arg(1);
      if (depends_on(exponent, var)) return std::nullopt;
      const Expr slope = canonical_rational(diff(base, var));
      if (depends_on(slope, var)) {
        const Expr expanded = expand(e);
        if (expanded == e) return std::nullopt;
        return integrate(expanded, var);
      }
      if (canonical_rational(exponent + Expr(1)).is_zero()) return log(base) / slope;
      const Expr raised = canonical_rational(exponent + Expr(1));
      return pow(base, raised) / (raised * slope);
    }
    case Kind::Exp: {
      const Expr slope = canonical_rational(diff(e.arg(0), var));
      if (depends_on(slope, var)) return std::nullopt;
      return e / slope;
    }
    case Kind::Log: {
      if (e.arg(0) != var) return std::nullopt;
      return var * e - var;
    }
    case Kind::Func: {
      if (e.arg(0) != var || e.order() == 0) return std::nullopt;
      return Expr::func(e.name(), e.order() - 1, var);
    }
    default:
      return std::nullopt;
  }
}

std::optional<Expr> jet_antiderivative(const Expr& e, const JetSpace& space) {
  if (space.dimension() != 1) throw ReductionError("antiderivatives need one independent variable");
  const std::string& s = space.variables.front();
  std::vector<Expr> parts;
  Expr rest = expand(e);
  for (int step = 0; step <= space.max_order + 1; ++step) {
    if (structurally_zero(rest)) return expand(add(parts));
    int top = -1;
    for (const auto& jet : jets_of(rest)) {
      if (jet.name() == space.dependent) top = std::max(top, jet.order());
    }
    if (top <= 0) {
      if (top == 0) return std::nullopt;
      auto p = integrate(rest, Expr::symbol(s));
      if (!p) return std::nullopt;
      parts.push_back(*p);
      return expand(add(parts));
    }
    const Expr highest = space.coordinate(MultiIndex(static_cast<std::size_t>(top), s));
    const Expr below = space.coordinate(MultiIndex(static_cast<std::size_t>(top - 1), s));
    const Expr slope = expand(diff(rest, highest));
    if (depends_on(slope, highest)) return std::nullopt;
    auto p = integrate(slope, below);
    if (!p) return std::nullopt;
    parts.push_back(*p);
    rest = expand(rest - total_derivative(*p, s, space));
  }
  return std::nullopt;
}

ReducedEquation integrate_once(const ReducedEquation& eq, const Expr& constant) {
  auto p = jet_antiderivative(eq.residual, eq.space);
  if (!p) throw ReductionError("reduced equation is not an exact derivative");
  return ReducedEquation{eq.space, expand(*p + constant), eq.cancelled};
}

ReducedEquation integrate_twice(const ReducedEquation& eq) {
  const Expr s = eq.space.variable(0);
  const auto once = integrate_once(eq, Expr(0));
  auto p = jet_antiderivative(once.residual, eq.space);
  if (!p) throw ReductionError("reduced equation is exact only once");
  return ReducedEquation{
      eq.space, expand(add({*p, mul({Expr::symbol("u1"), s}), Expr::symbol("u0")})),
      eq.cancelled};
}

std::optional<Expr> solve_first_order(const ReducedEquation& eq, const Expr& constant) {
  const JetSpace& space = eq.space;
  const Expr s = space.variable(0);
  const Expr slope_jet = space.coordinate({space.variables.front()});
  const Expr residual = expand(eq.residual);
  const Expr a = canonical_rational(diff(residual, slope_jet));
  const Expr b = canonical_rational(residual - a * slope_jet);
  for (const auto& part : {a, b}) {
    for (const auto& jet : jets_of(part)) {
      if (jet.name() == space.dependent) return std::nullopt;
    }
  }
  if (a.is_zero()) return std::nullopt;
  auto p = integrate(canonical_rational(-b / a), s);
  if (!p) return std::nullopt;
  return expand(*p + constant);
}

FirstIntegralCheck first_integral_check(const ReducedEquation& ode, const Expr& first_integral,
                                        const std::vector<std::pair<Expr, Expr>>& primitives,
                                        const ZeroTestOptions& options) {
  const JetSpace& space = ode.space;
  const std::string& s = space.variables.front();
  const Expr second = space.coordinate({s, s});
  const Expr residual = expand(ode.residual);
  const Expr a = canonical_rational(diff(residual, second));
  if (a.is_zero()) throw ReductionError("first integrals need a second-order equation");
  const Expr solved = canonical_rational(-(residual - a * second) / a);
  ExprMap<Expr> rules;
  for (const auto& [primitive, integrand] : primitives) {
    rules[Expr::func(primitive.name(), primitive.order() + 1, primitive.arg(0))] = integrand;
  }
  Expr derivative = total_derivative(first_integral, s, space);
  derivative = subs(derivative, rules);
  derivative = expand(subs(derivative, second, solved));
  FirstIntegralCheck out;
  out.derivative = derivative;
  out.verdict = is_zero(derivative, {}, options);
  out.holds = out.verdict.zero();
  return out;
}

std::string to_string(SolutionStatus status) {
  switch (status) {
    case SolutionStatus::ZeroIdentically:
      return "ZeroIdentically";
    case SolutionStatus::ZeroGivenConstraints:
      return "ZeroGivenConstraints";
    case SolutionStatus::Nonzero:
      return "Nonzero";
    case SolutionStatus::Undecided:
      return "Undecided";
  }
  return "Undecided";
}

std::string SolutionVerdict::summary() const {
  std::string out = to_string(status);
  if (!constraints.empty()) {
    out += " [";
    for (std::size_t i = 0; i < constraints.size(); ++i) {
      if (i > 0) out += ", ";
      out += to_text(constraints[i].first) + " = " + to_text(constraints[i].second);
    }
    out += "]";
  }
  return out;
}

Expr substitute_solution(const Expr& residual, const JetSpace& space, const Expr& candidate) {
  ExprMap<Expr> replacements;
  for (const auto& jet : jets_of(residual)) {
    if (jet.name() != space.dependent) continue;
    replacements[jet] = jet.index().empty() ? candidate
                                            : total_derivative(candidate, jet.index(), space);
  }
  return subs(residual, replacements);
}

namespace {

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r.sign() < 0) return std::nullopt;
  const mpz_class num = r.numerator();
  const mpz_class den = r.denominator();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) {
    return std::nullopt;
  }
  mpz_class a;
  mpz_class b;
  mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
  return Rational(mpq_class(a, b));
}

std::optional<Expr> term_sqrt(const Expr& term) {
  const auto [c, monomial] = split_coefficient(term);
  auto root = rational_sqrt(c);
  if (!root) return std::nullopt;
  std::vector<Expr> factors{Expr(*root)};
  for (const auto& f : factors_of(monomial)) {
    if (f.is_one()) continue;
    const auto [base, exponent] = as_power(f);
    if (exponent.is_number()) {
      const Rational half = exponent.number() / Rational(2);
      if (!half.is_integer()) return std::nullopt;
      factors.push_back(pow(base, Expr(half)));
    } else {
      factors.push_back(pow(base, canonical_rational(exponent / Expr(2))));
    }
  }
  return mul(std::move(factors));
}

/// Square root of an expanded polynomial that is a perfect square.
std::optional<Expr> polynomial_sqrt(const Expr& p, int depth = 0) {
  if (p.is_zero()) return Expr(0);
  if (!p.is(Kind::Add)) return term_sqrt(p);
  if (depth > 8) return std::nullopt;
  std::optional<Expr> pick;
  int degree = 0;
  for (const auto& atom : leaf_atoms(p)) {
    auto d = polynomial_degree(p, atom);
    if (d && *d > 0) {
      pick = atom;
      degree = *d;
      break;
    }
  }
  if (!pick || degree % 2 != 0) return std::nullopt;
  const auto parts = collect(p, {*pick});
  auto coefficient = [&](int k) {
    auto it = parts.find(k == 0 ? Expr(1) : pow(*pick, Expr(k)));
    return it == parts.end() ? Expr(0) : it->second;
  };
  const int half = degree / 2;
  std::vector<Expr> q(static_cast<std::size_t>(half + 1));
  auto top = polynomial_sqrt(coefficient(degree), depth + 1);
  if (!top || top->is_zero()) return std::nullopt;
  q[half] = *top;
  const Expr twice_top = expand(Expr(2) * *top);
  for (int k = half - 1; k >= 0; --k) {
    std::vector<Expr> terms{coefficient(half + k)};
    for (int i = k + 1; i <= half; ++i) {
      const int j = half + k - i;
      if (j <= k || j > half) continue;
      terms.push_back(-(q[i] * q[j]));
    }
    auto next = divide_exact(expand(add(std::move(terms))), twice_top);
    if (!next) return std::nullopt;
    q[k] = *next;
  }
  std::vector<Expr> terms;
  for (int k = 0; k <= half; ++k) terms.push_back(q[k] * pow(*pick, Expr(k)));
  const Expr root = expand(add(std::move(terms)));
  if (!expand(root * root - p).is_zero()) return std::nullopt;
  return root;
}

/// Cancels monomial content and linear factors (found as roots in single
/// atoms) shared by numerator and denominator.
Expr simplify_quotient(const Expr& numerator, const Expr& denominator);

/// Removes factors shared by every term that the ledger proves nonzero.
Expr strip_content(const Expr& numerator, const AssumptionLedger& ledger) {
  Expr out = numerator;
  for (const auto& factor : common_factors(numerator)) {
    if (ledger.known_nonzero(factor)) out = expand(out * pow(factor, Expr(-1)));
  }
  return out;
}

struct Roots {
  std::vector<Expr> values;
  Expr leading;
};

/// Roots of a polynomial of degree 1 or 2 in `var` (after removing a power
/// of var); the quadratic case needs a discriminant that is a perfect square.
std::optional<Roots> polynomial_roots(const Expr& polynomial, const Expr& var, int& low) {
  const auto degree = polynomial_degree(polynomial, var);
  if (!degree || *degree == 0) return std::nullopt;
  const auto parts = collect(polynomial, {var});
  auto coefficient = [&](int k) {
    auto it = parts.find(k == 0 ? Expr(1) : pow(var, Expr(k)));
    return it == parts.end() ? Expr(0) : it->second;
  };
  low = 0;
  while (low < *degree && structurally_zero(coefficient(low))) ++low;
  const int reduced = *degree - low;
  Roots out;
  if (reduced == 1) {
    out.leading = coefficient(low + 1);
    out.values.push_back(simplify_quotient(-coefficient(low), coefficient(low + 1)));
    return out;
  }
  if (reduced != 2) return std::nullopt;
  const Expr a = coefficient(low + 2);
  const Expr b = coefficient(low + 1);
  const Expr c = coefficient(low);
  const Fraction disc = to_fraction(canonical_rational(b * b - Expr(4) * a * c));
  auto top = polynomial_sqrt(disc.numerator);
  auto bottom = polynomial_sqrt(disc.denominator);
  if (!top || !bottom) return std::nullopt;
  out.leading = a;
  const Expr root = *top / *bottom;
  out.values.push_back(simplify_quotient(-b + root, Expr(2) * a));
  if (!top->is_zero()) out.values.push_back(simplify_quotient(-b - root, Expr(2) * a));
  return out;
}

Expr simplify_quotient(const Expr& numerator, const Expr& denominator) {
  Fraction top = to_fraction(numerator);
  Fraction bottom = to_fraction(denominator);
  Expr num = expand(top.numerator * bottom.denominator);
  Expr den = expand(top.denominator * bottom.numerator);
  for (const auto& factor : common_factors(den)) {
    num = expand(num * pow(factor, Expr(-1)));
    den = expand(den * pow(factor, Expr(-1)));
  }
  for (const auto& atom : leaf_atoms(den)) {
    if (!atom.is(Kind::Symbol)) continue;
    const auto degree = polynomial_degree(den, atom);
    if (!degree || *degree == 0 || *degree > 2) continue;
    int low = 0;
    auto roots = polynomial_roots(den, atom, low);
    if (!roots) continue;
    for (const auto& root : roots->values) {
      const Expr factor = to_fraction(atom - root).numerator;
      if (factor.is_number()) continue;
      for (;;) {
        auto n = divide_exact(num, factor);
        auto d = divide_exact(den, factor);
        if (!n || !d) break;
        num = *n;
        den = *d;
      }
    }
  }
  return canonical_rational(num / den);
}

std::vector<Expr> roots_in(const Expr& equation, const Expr& var, const AssumptionLedger& ledger,
                           std::vector<Expr>& side_conditions) {
  const Expr numerator = strip_content(to_fraction(equation).numerator, ledger);
  int low = 0;
  auto found = polynomial_roots(numerator, var, low);
  std::vector<Expr> roots;
  if (!found) return roots;
  if (low > 0 && !ledger.known_nonzero(var)) roots.emplace_back(0);
  side_conditions.push_back(found->leading);
  roots.insert(roots.end(), found->values.begin(), found->values.end());
  return roots;
}

using Constraints = std::vector<std::pair<Expr, Expr>>;

bool breaks_ledger(const Expr& var, const Expr& value, const AssumptionLedger& ledger) {
  for (const auto& entry : ledger.entries()) {
    if (!depends_on(entry.expr, var)) continue;
    if (structurally_zero(canonical_rational(subs(entry.expr, var, value)))) return true;
  }
  return false;
}

std::optional<Constraints> solve_constraints(std::vector<Expr> equations,
                                             const std::vector<Expr>& params,
                                             const AssumptionLedger& ledger,
                                             std::vector<Expr>& side_conditions) {
  std::vector<Expr> open;
  for (const auto& e : equations) {
    if (!structurally_zero(e)) open.push_back(e);
  }
  if (open.empty()) return Constraints{};
  const Expr& equation = open.front();
  for (const auto& var : params) {
    if (!depends_on(equation, var)) continue;
    std::vector<Expr> conditions;
    for (const auto& root : roots_in(equation, var, ledger, conditions)) {
      if (depends_on(root, var) || breaks_ledger(var, root, ledger)) continue;
      std::vector<Expr> next;
      for (const auto& e : open) next.push_back(canonical_rational(subs(e, var, root)));
      std::vector<Expr> rest_params;
      for (const auto& p : params) {
        if (p != var) rest_params.push_back(p);
      }
      std::vector<Expr> inner_conditions;
      auto rest = solve_constraints(std::move(next), rest_params, ledger, inner_conditions);
      if (!rest) continue;
      Expr value = root;
      for (const auto& [p, v] : *rest) value = canonical_rational(subs(value, p, v));
      Constraints out{{var, value}};
      out.insert(out.end(), rest->begin(), rest->end());
      side_conditions.insert(side_conditions.end(), conditions.begin(), conditions.end());
      side_conditions.insert(side_conditions.end(), inner_conditions.begin(),
                             inner_conditions.end());
      return out;
    }
  }
  return std::nullopt;
}

std::vector<Expr> parameter_order(const std::vector<Expr>& equations, const JetSpace& space) {
  std::set<Expr, ExprLess> atoms;
  for (const auto& e : equations) {
    for (const auto& a : leaf_atoms(e)) {
      if (a.is(Kind::Symbol) && !space.has_variable(a.name())) atoms.insert(a);
    }
  }
  const std::vector<std::string> priority{"u0", "U0", "g1", "g0", "h", "u1", "alpha1", "alpha2"};
  std::vector<Expr> out;
  for (const auto& name : priority) {
    const Expr s = Expr::symbol(name);
    if (atoms.erase(s) > 0) out.push_back(s);
  }
  out.insert(out.end(), atoms.begin(), atoms.end());
  return out;
}

}  // namespace

SolutionVerdict check_solution(const Expr& residual, const JetSpace& space, const Expr& candidate,
                               const AssumptionLedger& ledger, const ZeroTestOptions& options) {
  SolutionVerdict out;
  out.residual = expand(substitute_solution(residual, space, candidate));
  out.check = is_zero(out.residual, ledger, options);
  if (out.check.zero()) {
    out.status = SolutionStatus::ZeroIdentically;
    return out;
  }
  std::vector<Expr> equations;
  for (const auto& [key, value] : split_by(out.residual, variable_of(space))) {
    equations.push_back(canonical_rational(value));
  }
  std::vector<Expr> conditions;
  auto solved =
      solve_constraints(equations, parameter_order(equations, space), ledger, conditions);
  if (!solved || solved->empty()) {
    out.status = out.check.status == ZeroStatus::Nonzero ? SolutionStatus::Nonzero
                                                         : SolutionStatus::Undecided;
    return out;
  }
  ExprMap<Expr> values(solved->begin(), solved->end());
  const Expr constrained = expand(subs(out.residual, values));
  ZeroVerdict check = is_zero(constrained, ledger, options);
  for (const auto& c : conditions) {
    if (!free_of(c, space)) continue;
    const Expr condition = canonical_rational(subs(c, values));
    if (!condition.is_number()) append_unique(out.side_conditions, condition);
  }
  out.constraints = std::move(*solved);
  out.check = check;
  out.status = check.zero()                              ? SolutionStatus::ZeroGivenConstraints
               : check.status == ZeroStatus::Nonzero ? SolutionStatus::Nonzero
                                                     : SolutionStatus::Undecided;
  return out;
}

std::optional<Expr> proportional(const Expr& a, const Expr& b, const JetSpace& space,
                                 const AssumptionLedger& ledger, const ZeroTestOptions& options) {
  const Expr ea = expand(a);
  const Expr eb = expand(b);
  if (eb.is_zero()) return std::nullopt;
  const auto pa = split_by(ea, atom_of(space));
  const auto pb = split_by(eb, atom_of(space));
  for (const auto& [key, value] : pb) {
    if (structurally_zero(value)) continue;
    auto it = pa.find(key);
    if (it == pa.end()) return std::nullopt;
    const Expr factor = canonical_rational(it->second / value);
    if (!free_of(factor, space)) return std::nullopt;
    if (is_zero(ea - factor * eb, ledger, options).zero()) return factor;
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace liesym
