#include "liesym/jet.hpp"

#include <algorithm>
#include <functional>

#include "liesym/calculus.hpp"
#include "liesym/render.hpp"

namespace liesym {

namespace {

std::vector<std::string> split_fields(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ';') {
      parts.emplace_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

MultiIndex drop_last(const MultiIndex& index, const std::string& var) {
  MultiIndex out = index;
  out.erase(std::find(out.begin(), out.end(), var));
  return out;
}

}  // namespace

Expr JetSpace::coordinate(const MultiIndex& index) const {
  if (static_cast<int>(index.size()) > max_order) {
    throw JetSpaceError("jet order " + std::to_string(index.size()) + " exceeds the maximum " +
                        std::to_string(max_order));
  }
  for (const auto& v : index) {
    if (!has_variable(v)) throw JetSpaceError("unknown independent variable '" + v + "'");
  }
  return Expr::jet(dependent, index);
}

bool JetSpace::has_variable(const std::string& v) const {
  return std::find(variables.begin(), variables.end(), v) != variables.end();
}

ParseOptions JetSpace::parse_options() const {
  ParseOptions options;
  options.variables = variables;
  options.dependents = {dependent};
  JetSpace copy = *this;
  options.total_derivative = [copy](const Expr& e, const std::string& v) {
    if (!copy.has_variable(v)) throw JetSpaceError("no independent variable '" + v + "'");
    return total_derivative(e, v, copy);
  };
  return options;
}

Expr total_derivative(const Expr& e, const std::string& var, const JetSpace& space) {
  std::vector<Expr> terms{diff(e, Expr::symbol(var))};
  for (const auto& jet : jets_of(e)) {
    if (jet.name() != space.dependent) continue;
    Expr partial = diff(e, jet);
    if (partial.is_zero()) continue;
    terms.push_back(mul({partial, space.coordinate(extend_index(jet.index(), var))}));
  }
  return add(std::move(terms));
}

Expr total_derivative(const Expr& e, const MultiIndex& index, const JetSpace& space) {
  Expr out = e;
  for (const auto& v : index) out = total_derivative(out, v, space);
  return out;
}

VectorField VectorField::zero(std::size_t dimension) {
  return VectorField(std::vector<Expr>(dimension, Expr(0)), Expr(0));
}

std::vector<Expr> VectorField::components() const {
  std::vector<Expr> out = xi;
  out.push_back(eta);
  return out;
}

bool VectorField::is_zero() const {
  return std::all_of(xi.begin(), xi.end(), [](const Expr& e) { return e.is_zero(); }) &&
         eta.is_zero();
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  VectorField out = a;
  for (std::size_t i = 0; i < out.xi.size(); ++i) out.xi[i] = expand(a.xi[i] + b.xi.at(i));
  out.eta = expand(a.eta + b.eta);
  return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  return a + Expr(-1) * b;
}

VectorField operator*(const Expr& c, const VectorField& a) {
  VectorField out = a;
  for (auto& x : out.xi) x = expand(c * x);
  out.eta = expand(c * a.eta);
  return out;
}

bool operator==(const VectorField& a, const VectorField& b) {
  return a.xi.size() == b.xi.size() && std::equal(a.xi.begin(), a.xi.end(), b.xi.begin()) &&
         a.eta == b.eta;
}

VectorField parse_vector_field(std::string_view text, const JetSpace& space) {
  auto parts = split_fields(text);
  if (parts.size() != space.dimension() + 1) {
    throw ParseError("vector field needs " + std::to_string(space.dimension() + 1) +
                         " ';'-separated components, got " + std::to_string(parts.size()),
                     0);
  }
  const ParseOptions options = space.parse_options();
  VectorField field;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Expr c;
    try {
      c = parse(parts[i], options);
    } catch (const ParseError& err) {
      throw ParseError(std::string(err.what()).substr(0, std::string(err.what()).rfind(" at ")),
                       offset + err.column());
    }
    offset += parts[i].size() + 1;
    if (i + 1 < parts.size()) {
      field.xi.push_back(c);
    } else {
      field.eta = c;
    }
  }
  return field;
}

std::string to_text(const VectorField& field) {
  std::string out;
  for (const auto& c : field.xi) out += to_text(c) + "; ";
  return out + to_text(field.eta);
}

namespace {

std::string operator_form(const VectorField& field, const JetSpace& space, bool latex) {
  std::vector<std::pair<Expr, std::string>> parts;
  for (std::size_t i = 0; i < field.xi.size(); ++i) {
    parts.emplace_back(field.xi[i], space.variables[i]);
  }
  parts.emplace_back(field.eta, space.dependent);
  std::string out;
  for (const auto& [c, v] : parts) {
    if (c.is_zero()) continue;
    const std::string partial = latex ? "\\partial_{" + v + "}" : "d_" + v;
    const bool negative = split_coefficient(c).first.sign() < 0;
    const Expr magnitude = negative ? -c : c;
    std::string coefficient;
    if (!magnitude.is_one()) {
      coefficient = latex ? to_latex(magnitude) : to_text(magnitude);
      if (magnitude.is(Kind::Add)) coefficient = "(" + coefficient + ")";
      coefficient += latex ? " " : "*";
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + coefficient + partial;
    } else {
      out += (negative ? " - " : " + ") + coefficient + partial;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string operator_text(const VectorField& field, const JetSpace& space) {
  return operator_form(field, space, false);
}

std::string operator_latex(const VectorField& field, const JetSpace& space) {
  return operator_form(field, space, true);
}

Expr apply(const VectorField& field, const Expr& fn, const JetSpace& space) {
  std::vector<Expr> terms;
  for (std::size_t i = 0; i < field.xi.size(); ++i) {
    if (field.xi[i].is_zero()) continue;
    terms.push_back(mul({field.xi[i], diff(fn, space.variable(i))}));
  }
  if (!field.eta.is_zero()) terms.push_back(mul({field.eta, diff(fn, space.coordinate({}))}));
  return add(std::move(terms));
}

VectorField commutator(const VectorField& a, const VectorField& b, const JetSpace& space) {
  VectorField out;
  for (std::size_t i = 0; i < a.xi.size(); ++i) {
    out.xi.push_back(expand(apply(a, b.xi[i], space) - apply(b, a.xi[i], space)));
  }
  out.eta = expand(apply(a, b.eta, space) - apply(b, a.eta, space));
  return out;
}

const Expr& ProlongedField::coefficient(const MultiIndex& index) const {
  auto it = eta.find(index);
  if (it == eta.end()) {
    throw JetSpaceError("prolongation has no coefficient for order " +
                        std::to_string(index.size()) + " index '" + index_string(index) + "'");
  }
  return it->second;
}

namespace {

void fill_coefficient(ProlongedField& out, const MultiIndex& index, const JetSpace& space) {
  if (out.eta.count(index)) return;
  const std::string var = index.back();
  const MultiIndex parent = drop_last(index, var);
  fill_coefficient(out, parent, space);
  std::vector<Expr> terms{total_derivative(out.eta.at(parent), var, space)};
  for (std::size_t j = 0; j < out.base.xi.size(); ++j) {
    const Expr dxi = total_derivative(out.base.xi[j], var, space);
    if (dxi.is_zero()) continue;
    terms.push_back(-mul({space.coordinate(extend_index(parent, space.variables[j])), dxi}));
  }
  out.eta.emplace(index, expand(add(std::move(terms))));
}

void all_indices(const JetSpace& space, int order, std::vector<MultiIndex>& out) {
  std::function<void(MultiIndex, std::size_t)> rec = [&](MultiIndex current, std::size_t from) {
    if (static_cast<int>(current.size()) == order) {
      out.push_back(current);
      return;
    }
    for (std::size_t i = from; i < space.variables.size(); ++i) {
      MultiIndex next = current;
      next.push_back(space.variables[i]);
      rec(next, i);
    }
  };
  rec({}, 0);
}

}  // namespace

ProlongedField prolong_for(const VectorField& field, const std::vector<MultiIndex>& indices,
                           const JetSpace& space) {
  if (field.xi.size() != space.dimension()) {
    throw JetSpaceError("vector field has " + std::to_string(field.xi.size()) +
                        " independent components, the jet space has " +
                        std::to_string(space.dimension()));
  }
  ProlongedField out;
  out.base = field;
  out.eta.emplace(MultiIndex{}, field.eta);
  for (const auto& index : indices) {
    space.coordinate(index);
    fill_coefficient(out, make_index(index), space);
  }
  return out;
}

ProlongedField prolong(const VectorField& field, int order, const JetSpace& space) {
  if (order > space.max_order) {
    throw JetSpaceError("prolongation order " + std::to_string(order) +
                        " needs jets beyond the maximum order " + std::to_string(space.max_order));
  }
  std::vector<MultiIndex> indices;
  for (int k = 1; k <= order; ++k) all_indices(space, k, indices);
  return prolong_for(field, indices, space);
}

Expr apply(const ProlongedField& field, const Expr& e, const JetSpace& space) {
  std::vector<Expr> terms;
  for (std::size_t i = 0; i < field.base.xi.size(); ++i) {
    if (field.base.xi[i].is_zero()) continue;
    Expr d = diff(e, space.variable(i));
    if (!d.is_zero()) terms.push_back(mul({field.base.xi[i], d}));
  }
  for (const auto& jet : jets_of(e)) {
    if (jet.name() != space.dependent) continue;
    Expr d = diff(e, jet);
    if (d.is_zero()) continue;
    terms.push_back(mul({field.coefficient(jet.index()), d}));
  }
  return add(std::move(terms));
}

std::string jet_key(const MultiIndex& index, const JetSpace& space) {
  if (index.empty()) return space.dependent;
  return space.dependent + "_" + index_string(index);
}

nlohmann::json to_json(const ProlongedField& field, const JetSpace& space) {
  nlohmann::json xi = nlohmann::json::object();
  for (std::size_t i = 0; i < field.base.xi.size(); ++i) {
    xi[space.variables[i]] = to_text(field.base.xi[i]);
  }
  nlohmann::json eta = nlohmann::json::object();
  for (const auto& [index, c] : field.eta) eta[jet_key(index, space)] = to_text(c);
  return {{"xi", xi}, {"eta", eta}};
}

}  // namespace liesym
