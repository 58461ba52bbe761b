#include "liesym/catalog.hpp"

#include <stdexcept>

#include "liesym/calculus.hpp"
#include "liesym/parse.hpp"

namespace liesym {

const std::vector<CaseEntry>& stated_cases() {
  static const std::vector<CaseEntry> cases{
      {"gze1", "A", "f0*u^K", "g0 + g1*u^(-2/alpha1 - (K - 1))", "X3", "t; x; alpha1*u", "power",
       "-2/alpha1 - (K - 1)", {"f0", "g1", "alpha1", "K"}},
      {"gze1", "B", "f0*u^K", "g0 + g1*ln(u)", "X4", "t; x; u/(1 - K)", "log", "",
       {"f0", "g1", "K", "1 - K"}},
      {"gze1", "C", "f0*exp(K*u)", "g0 + g1*exp(-(K + 2/alpha2)*u)", "X5", "t; x; alpha2",
       "exponential", "-(K + 2/alpha2)", {"f0", "g1", "alpha2", "K"}},
      {"gze1", "D", "f0*exp(K*u)", "g0 + g1*u", "X6", "t; x; -1/K", "linear", "",
       {"f0", "g1", "K"}},
      {"gze2", "I", "f0*u^K", "g0 + g1*u^(-1/alpha1 - (K - 1))", "Y5", "0; 0; y; -alpha1*u",
       "power", "-1/alpha1 - (K - 1)", {"f0", "g1", "alpha1", "K"}},
      {"gze2", "II", "f0*u^K", "g0 + g1*ln(u)", "Y6", "0; 0; y; u/(1 - K)", "log", "",
       {"f0", "g1", "K", "1 - K"}},
      {"gze2", "III", "f0*exp(K*u)", "g0 + g1*exp(-(K + 2/alpha2)*u)", "Y7", "0; 0; y; alpha2",
       "exponential", "-(K + 2/alpha2)", {"f0", "g1", "alpha2", "K"}},
      {"gze2", "IV", "f0*exp(K*u)", "g0 + g1*u", "Y8", "0; 0; y; -1/K", "linear", "",
       {"f0", "g1", "K"}},
  };
  return cases;
}

const CaseEntry& stated_case(const std::string& pde, const std::string& id) {
  for (const auto& c : stated_cases()) {
    if (c.pde == pde && c.id == id) return c;
  }
  throw std::invalid_argument("no case '" + id + "' for " + pde);
}

std::vector<std::string> case_ids(const std::string& pde) {
  std::vector<std::string> out;
  for (const auto& c : stated_cases()) {
    if (c.pde == pde) out.push_back(c.id);
  }
  return out;
}

JetSpace space_of(const std::string& pde) {
  if (pde == "gze1") return JetSpace::plane();
  if (pde == "gze2") return JetSpace::space();
  throw std::invalid_argument("unknown equation '" + pde + "' (expected gze1 or gze2)");
}

Pde case_pde(const CaseEntry& entry) {
  const JetSpace space = space_of(entry.pde);
  const auto options = space.parse_options();
  const Expr f = parse(entry.f, options);
  const Expr g = parse(entry.g, options);
  Pde pde = entry.pde == "gze1" ? make_gze1(f, g) : make_gze2(f, g);
  for (const auto& p : entry.nonzero) pde.ledger.assume_nonzero(parse(p, options), "case parameter");
  return pde;
}

Pde generic_pde(const std::string& pde) { return make_preset(pde); }

std::vector<NamedField> base_generators(const std::string& pde) {
  const JetSpace space = space_of(pde);
  if (pde == "gze1") {
    return {{"X1", parse_vector_field("1; 0; 0", space)},
            {"X2", parse_vector_field("0; 1; 0", space)}};
  }
  return {{"Y1", parse_vector_field("1; 0; 0; 0", space)},
          {"Y2", parse_vector_field("0; 1; 0; 0", space)},
          {"Y3", parse_vector_field("0; 0; 1; 0", space)},
          {"Y4", parse_vector_field("t; x; -y; 0", space)}};
}

NamedField stated_generator(const CaseEntry& entry) {
  const JetSpace space = space_of(entry.pde);
  return {entry.generator_name, parse_vector_field(entry.generator, space)};
}

std::vector<NamedField> case_basis(const CaseEntry& entry, const std::string& extra_name) {
  auto basis = base_generators(entry.pde);
  NamedField extra = stated_generator(entry);
  extra.name = extra_name;
  basis.push_back(std::move(extra));
  return basis;
}

const StatedTable& stated_commutators(const std::string& pde) {
  static const StatedTable gze1{"commutator table (1+1)",
                                "gze1",
                                {"X1", "X2", "XA"},
                                {{"0", "0", "X1"}, {"0", "0", "X2"}, {"-X1", "-X2", "0"}},
                                {}};
  static const StatedTable gze2{"commutator table (2+1)",
                                "gze2",
                                {"Y1", "Y2", "Y3", "Y4", "YA"},
                                {{"0", "0", "0", "Y1", "0"},
                                 {"0", "0", "0", "Y2", "0"},
                                 {"0", "0", "0", "Y3", "-Y3"},
                                 {"-Y1", "-Y2", "-Y3", "0", "0"},
                                 {"0", "0", "Y3", "0", "0"}},
                                {}};
  return pde == "gze1" ? gze1 : gze2;
}

const StatedTable& stated_adjoint(const std::string& pde) {
  static const StatedTable gze1{"adjoint table (1+1)",
                                "gze1",
                                {"X1", "X2", "X3"},
                                {{"X1", "X2", "X3 - eps*X1"},
                                 {"X1", "X2", "X3 - eps*X2"},
                                 {"exp(eps)*X1", "exp(eps)*X2", "X3"}},
                                {}};
  static const StatedTable gze2{
      "adjoint table (2+1)",
      "gze2",
      {"Y1", "Y2", "Y3", "Y4", "YA"},
      {{"Y1", "Y2", "Y3", "Y4 - eps*Y1", "Y5"},
       {"Y1", "Y2", "Y3", "Y4 - eps*Y2", "Y5"},
       {"exp(eps)*Y1", "exp(eps)*Y2", "Y3", "Y4 - eps*Y3", "Y5 + eps*Y3"},
       {"exp(eps)*Y1", "exp(eps)*Y2", "exp(eps)*Y3", "Y4", "Y5"},
       {"Y1", "Y2", "exp(eps)*Y3", "Y4", "Y5"}},
      {{"Y5", "YA"}}};
  return pde == "gze1" ? gze1 : gze2;
}

const std::vector<StatedOptimalSystem>& stated_optimal_systems() {
  static const std::vector<StatedOptimalSystem> systems{
      {"2A1", "gze1", 2, {"a1", "a2"}, {{"X1", "1, 0"}, {"X2", "0, 1"}, {"X1+alpha*X2", "1, alpha"}}},
      {"A3,3",
       "gze1",
       3,
       {"a3"},
       {{"X1", "1, 0, 0"},
        {"X2", "0, 1, 0"},
        {"X1+alpha*X2", "1, alpha, 0"},
        {"XA", "0, 0, 1"}}},
      {"A4,5^ab",
       "gze2",
       4,
       {"a4"},
       {{"Y1", "1, 0, 0, 0"},
        {"Y2", "0, 1, 0, 0"},
        {"Y3", "0, 0, 1, 0"},
        {"Y4", "0, 0, 0, 1"},
        {"Y1+alpha*Y2", "1, alpha, 0, 0"},
        {"Y1+alpha*Y3", "1, 0, alpha, 0"},
        {"Y2+alpha*Y3", "0, 1, alpha, 0"},
        {"Y1+alpha*Y2+beta*Y3", "1, alpha, beta, 0"}}},
      {"3A1xs2A1",
       "gze2",
       5,
       {"a4", "a5"},
       {{"Y1", "1, 0, 0, 0, 0"},
        {"Y2", "0, 1, 0, 0, 0"},
        {"Y3", "0, 0, 1, 0, 0"},
        {"Y4", "0, 0, 0, 1, 0"},
        {"Y1+alpha*Y2", "1, alpha, 0, 0, 0"},
        {"Y1+alpha*Y3", "1, 0, alpha, 0, 0"},
        {"Y2+alpha*Y3", "0, 1, alpha, 0, 0"},
        {"Y1+alpha*Y2+beta*Y3", "1, alpha, beta, 0, 0"},
        {"YA", "0, 0, 0, 0, 1"},
        {"Y4+alpha*YA", "0, 0, 0, 1, alpha"},
        {"Y1+alpha*YA", "1, 0, 0, 0, alpha"},
        {"Y2+alpha*YA", "0, 1, 0, 0, alpha"},
        {"Y1+alpha*Y2+beta*YA", "1, alpha, 0, 0, beta"}}},
  };
  return systems;
}

const std::vector<StatedSolution>& stated_solutions() {
  static const std::vector<StatedSolution> solutions{
      {"1+1, X3 reduction", "gze1", "A", "u0*x^alpha1*t^(2*alpha1)", "t^alpha1*U", "x/t", "X3",
       "power law composed with t^(2 alpha1)", true},
      {"1+1, X3 reduction (composed profile)", "gze1", "A", "U0*x^alpha1", "t^alpha1*U", "x/t",
       "X3", "U = U0 sigma^alpha1 composed with u = U t^alpha1", true},
      {"1+1, X4 reduction", "gze1", "B", "u0*x^(1/(1 - K))*t^(2/(1 - K))", "t^(1/(1 - K))*U",
       "x/t", "X4", "power law with weight 1/(1 - K)", true},
      {"1+1, X4 reduction (composed profile)", "gze1", "B", "U0*x^(1/(1 - K))", "t^(1/(1 - K))*U",
       "x/t", "X4", "U = U0 sigma^(1/(1 - K)) composed with u = U t^(1/(1 - K))", true},
      {"1+1, X5 reduction", "gze1", "C", "alpha2*ln(U0*x)", "U + alpha2*ln(t)", "x/t", "X5",
       "static logarithmic solution"},
      {"1+1, X6 reduction", "gze1", "D", "-ln(U0*x)/K", "U - ln(t)/K", "x/t", "X6",
       "static logarithmic solution"},
      {"2+1, A2 reduction, case I", "gze2", "I", "u0*((a2*t - a1*x)*y)^alpha1", "U",
       "(a2*t - a1*x)*y", "a1*Y1 + a2*Y2, Y4", "power of the product invariant"},
      {"2+1, A2 reduction, case III", "gze2", "III", "u0*ln((a2*t - a1*x)*y)", "U",
       "(a2*t - a1*x)*y", "a1*Y1 + a2*Y2, Y4", "logarithm of the product invariant"},
      {"2+1, A2 reduction, case III (stated u0)", "gze2", "III",
       "-alpha2/(alpha2*K + 2)*ln((a2*t - a1*x)*y)", "U", "(a2*t - a1*x)*y",
       "a1*Y1 + a2*Y2, Y4", "logarithm with u0 = -alpha2/(alpha2 K + 2)"},
      {"2+1, A4 reduction, case I", "gze2", "I", "U0*(x/t)^alpha1*(t*y)^alpha1",
       "U*(t*y)^alpha1", "x/t", "Y4, Y5", "U = U0 sigma^alpha1"},
      {"2+1, A4 reduction, case II", "gze2", "II", "U0*(x/t)^(1/(1 - K))*(t*y)^(1/(1 - K))",
       "U*(t*y)^(1/(1 - K))", "x/t", "Y4, Y6", "U = U0 sigma^(1/(1 - K))"},
      {"2+1, A4 reduction, case III", "gze2", "III", "alpha2*ln(x/t) + alpha2*ln(t*y)",
       "U + alpha2*ln(t*y)", "x/t", "Y4, Y7", "U = alpha2 ln(sigma)"},
      {"2+1, A4 reduction, case IV", "gze2", "IV", "ln(x/t)/(1 - K) + ln(t*y)/(1 - K)",
       "U + ln(t*y)/(1 - K)", "x/t", "Y4, Y8", "U = ln(sigma)/(1 - K)"},
  };
  return solutions;
}

const std::vector<StatedSubalgebra>& stated_subalgebras() {
  static const std::vector<StatedSubalgebra> subalgebras{
      {"A1", {"a1*Y1 + a2*Y2 + a3*Y3", "b1*Y1 + b2*Y2 + b3*Y3"}, ""},
      {"A2", {"a1*Y1 + a2*Y2", "Y4"}, ""},
      {"A3", {"Y3", "Y4"}, ""},
      {"A4", {"Y4", "YA"}, "I"},
      {"A5", {"a1*Y1 + a2*Y2 + aA*YA", "b1*Y1 + b2*Y2 + bA*YA"}, "I"},
  };
  return subalgebras;
}

const StatedSubalgebra& stated_subalgebra(const std::string& name) {
  for (const auto& s : stated_subalgebras()) {
    if (s.name == name) return s;
  }
  throw std::invalid_argument("unknown subalgebra '" + name + "' (expected A1..A5)");
}

VectorField combination(const std::string& text, const std::vector<NamedField>& basis,
                        const JetSpace& space) {
  ParseOptions options;
  options.variables = space.variables;
  const Expr e = parse(text, options);
  VectorField out = VectorField::zero(space.dimension());
  std::vector<Expr> names;
  for (const auto& b : basis) {
    const Expr name = Expr::symbol(b.name);
    const Expr c = canonical_rational(diff(e, name));
    names.push_back(name);
    if (!c.is_zero()) out = out + c * b.field;
  }
  Expr rest = e;
  for (const auto& n : names) rest = subs(rest, n, Expr(0));
  if (!canonical_rational(rest).is_zero()) {
    throw std::invalid_argument("'" + text + "' is not a linear combination of the generators");
  }
  return out;
}

}  // namespace liesym
