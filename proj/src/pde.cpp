#include "liesym/pde.hpp"

#include "liesym/calculus.hpp"

namespace liesym {

Expr u_coordinate() { return Expr::jet("u", {}); }
Expr abstract_f() { return Expr::func("f", 0, u_coordinate()); }
Expr abstract_g() { return Expr::func("g", 0, u_coordinate()); }

Pde make_zoomeron(const JetSpace& space, const Expr& f, const Expr& g, const Expr& xx_coefficient,
                  const Expr& g_coefficient, std::string name) {
  const Expr u = space.coordinate({});
  if (!depends_on(f, u)) throw PdeError("f must depend on u (got a constant)");
  if (!depends_on(g, u)) throw PdeError("g must depend on u (got a constant)");
  for (const Expr* part : {&f, &g}) {
    for (const auto& jet : jets_of(*part)) {
      if (jet.order() > 0) throw PdeError("f and g must be functions of u alone");
    }
  }
  const std::string mixed = space.dimension() == 3 ? "y" : "t";
  const Expr q = space.coordinate(make_index({"x", mixed})) / f;
  const Expr q_tt = total_derivative(q, make_index({"t", "t"}), space);
  const Expr q_xx = total_derivative(q, make_index({"x", "x"}), space);
  const Expr g_xt = total_derivative(g, make_index({"t", "x"}), space);
  Pde pde;
  pde.name = std::move(name);
  pde.space = space;
  pde.f = f;
  pde.g = g;
  pde.residual = expand(mul({pow(f, Expr(3)),
                             add({q_tt, -mul({xx_coefficient, q_xx}),
                                  mul({Expr(2), g_coefficient, g_xt})})}));
  pde.leading = space.coordinate(make_index({"x", mixed, "t", "t"}));
  pde.ledger.assume_nonzero(f, "f(u) divides the equation");
  return pde;
}

Pde make_gze1(const Expr& f, const Expr& g) {
  return make_zoomeron(JetSpace::plane(), f, g, Expr(1), Expr(1), "gze1");
}

Pde make_gze2(const Expr& f, const Expr& g) {
  return make_zoomeron(JetSpace::space(), f, g, Expr(1), Expr(1), "gze2");
}

std::vector<std::string> preset_names() {
  return {"gze1", "gze2", "zoomeron_1+1", "zoomeron_2+1", "g_zoomeron_2+1"};
}

Pde make_preset(const std::string& name) {
  const Expr u = u_coordinate();
  if (name == "gze1") return make_gze1(abstract_f(), abstract_g());
  if (name == "gze2") return make_gze2(abstract_f(), abstract_g());
  if (name == "zoomeron_1+1") {
    return make_zoomeron(JetSpace::plane(), u, pow(u, Expr(2)), Expr(1), Expr(1), name);
  }
  if (name == "zoomeron_2+1") {
    return make_zoomeron(JetSpace::space(), u, pow(u, Expr(2)), Expr(1), Expr(1), name);
  }
  if (name == "g_zoomeron_2+1") {
    const Expr k = Expr::symbol("k");
    const Expr alpha = Expr::symbol("alpha");
    const Expr n = Expr::symbol("n");
    Pde pde = make_zoomeron(JetSpace::space(), u, pow(u, mul({Expr(2), n})), pow(k, Expr(2)),
                            alpha, name);
    pde.ledger.assume_nonzero(n, "g must depend on u");
    return pde;
  }
  throw PdeError("unknown PDE preset '" + name + "'");
}

DeterminingSystem determining_equations(const Pde& pde, const VectorField& field) {
  std::vector<MultiIndex> indices;
  for (const auto& jet : jets_of(pde.residual)) {
    if (jet.name() == pde.space.dependent) indices.push_back(jet.index());
  }
  const ProlongedField prolonged = prolong_for(field, indices, pde.space);
  const Expr applied = apply(prolonged, pde.residual, pde.space);

  const Expr& lead = pde.leading;
  const Expr a = diff(pde.residual, lead);
  const Expr b = expand(subs(pde.residual, lead, Expr(0)));
  const ExprMap<Expr> parts = collect(applied, {lead});
  int degree = 0;
  for (const auto& [mono, c] : parts) {
    if (!c.is_zero()) degree = std::max(degree, *polynomial_degree(mono, lead));
  }
  if (degree > 2) throw PdeError("prolonged residual is not at most quadratic in the leading jet");
  auto coefficient = [&](int k) {
    const Expr key = k == 0 ? Expr(1) : pow(lead, Expr(k));
    auto it = parts.find(key);
    return it == parts.end() ? Expr(0) : it->second;
  };

  DeterminingSystem system;
  system.degree = degree;
  std::vector<Expr> terms;
  for (int k = 0; k <= degree; ++k) {
    terms.push_back(mul({coefficient(k), pow(-b, Expr(k)), pow(a, Expr(degree - k))}));
  }
  system.numerator = expand(add(std::move(terms)));
  if (degree == 1) {
    system.multiplier = coefficient(1);
  } else if (degree == 2) {
    system.multiplier = expand(mul({a, coefficient(1)}) + mul({coefficient(2), mul({a, lead}) - b}));
  }

  std::vector<Expr> basis;
  for (const auto& jet : jets_of(system.numerator)) {
    if (jet.name() == pde.space.dependent && jet.order() > 0) basis.push_back(jet);
  }
  for (auto& [mono, c] : collect(system.numerator, basis)) {
    if (c.is_zero()) continue;
    system.monomials.push_back(mono);
    system.equations.push_back(c);
  }
  return system;
}

ZeroVerdict check_reconstruction(const Pde& pde, const VectorField& field,
                                 const DeterminingSystem& system, const ZeroTestOptions& options) {
  std::vector<MultiIndex> indices;
  for (const auto& jet : jets_of(pde.residual)) indices.push_back(jet.index());
  const Expr applied = apply(prolong_for(field, indices, pde.space), pde.residual, pde.space);
  const Expr a = diff(pde.residual, pde.leading);
  const Expr check = mul({pow(a, Expr(system.degree)), applied}) - system.numerator -
                     mul({system.multiplier, pde.residual});
  return is_zero(check, pde.ledger, options);
}

SymmetryVerdict verify_symmetry(const Pde& pde, const VectorField& field,
                                const AssumptionLedger& ledger, const ZeroTestOptions& options) {
  AssumptionLedger all = pde.ledger;
  all.merge(ledger);
  const DeterminingSystem system = determining_equations(pde, field);
  SymmetryVerdict verdict;
  verdict.equation_count = system.equations.size();
  verdict.status = ZeroStatus::IdenticallyZero;
  for (std::size_t i = 0; i < system.equations.size(); ++i) {
    ZeroVerdict z = is_zero(system.equations[i], all, options);
    if (z.zero()) continue;
    if (z.status == ZeroStatus::Nonzero) {
      verdict.status = ZeroStatus::Nonzero;
    } else if (verdict.status != ZeroStatus::Nonzero) {
      verdict.status = ZeroStatus::Undecided;
    }
    verdict.failures.push_back({system.monomials[i], system.equations[i], std::move(z)});
  }
  return verdict;
}

}  // namespace liesym
