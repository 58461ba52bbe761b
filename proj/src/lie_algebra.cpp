#include "liesym/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "liesym/calculus.hpp"
#include "liesym/linear_solve.hpp"
#include "liesym/render.hpp"

namespace liesym {

namespace {

std::string combination_text(const std::vector<Expr>& coefficients,
                             const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    const Expr& c = coefficients[k];
    if (c.is_zero()) continue;
    const bool negative = split_coefficient(c).first.sign() < 0;
    const Expr magnitude = negative ? -c : c;
    std::string term;
    if (magnitude.is_one()) {
      term = names[k];
    } else if (magnitude.is(Kind::Add)) {
      term = "(" + to_text(magnitude) + ")*" + names[k];
    } else {
      term = to_text(magnitude) + "*" + names[k];
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
  }
  return out.empty() ? "0" : out;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<Eigen::Index> rref(RationalMatrix& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pick = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (!m(r, col).is_zero()) {
        pick = r;
        break;
      }
    }
    if (pick < 0) continue;
    m.row(row).swap(m.row(pick));
    const Rational inv = Rational(1) / m(row, col);
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      const Rational factor = m(r, col);
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(r, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

RationalMatrix identity(Eigen::Index n) {
  RationalMatrix id = RationalMatrix::Constant(n, n, Rational(0));
  for (Eigen::Index i = 0; i < n; ++i) id(i, i) = Rational(1);
  return id;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out = RationalMatrix::Constant(a.rows(), b.cols(), Rational(0));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

bool is_zero_matrix(const RationalMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_zero()) return false;
    }
  }
  return true;
}

std::vector<mpz_class> divisors(mpz_class value) {
  value = abs(value);
  std::vector<mpz_class> out;
  if (value == 0 || value > 1000000000) return out;
  for (mpz_class d = 1; d * d <= value; ++d) {
    if (value % d == 0) {
      out.push_back(d);
      if (d * d != value) out.push_back(value / d);
    }
  }
  return out;
}

Rational evaluate_poly(const std::vector<Rational>& c, const Rational& x) {
  Rational acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Divides by (lambda - root); coefficients low to high.
std::vector<Rational> deflate(const std::vector<Rational>& c, const Rational& root) {
  const std::size_t n = c.size() - 1;
  std::vector<Rational> q(n);
  Rational carry(0);
  for (std::size_t k = n; k-- > 0;) {
    carry = c[k + 1] + carry * root;
    q[k] = carry;
  }
  return q;
}

// Basis vectors (columns of the derived algebra span) and a complement.
struct DerivedSplit {
  RationalMatrix derived;  // n x d, columns span [g, g]
  std::vector<std::size_t> complement;
};

DerivedSplit split_derived(const LieAlgebra& algebra) {
  const std::size_t n = algebra.dimension();
  std::vector<RationalVector> brackets;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      RationalVector v(n);
      for (std::size_t k = 0; k < n; ++k) v(k) = algebra.constants[i][j][k].number();
      brackets.push_back(v);
    }
  }
  DerivedSplit out;
  RationalMatrix span(static_cast<Eigen::Index>(n), 0);
  for (const auto& v : brackets) {
    RationalMatrix candidate(span.rows(), span.cols() + 1);
    candidate << span, v;
    if (rank(candidate) > static_cast<std::size_t>(span.cols())) span = candidate;
  }
  out.derived = span;
  RationalMatrix acc = span;
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector e = RationalVector::Constant(static_cast<Eigen::Index>(n), Rational(0));
    e(static_cast<Eigen::Index>(i)) = Rational(1);
    RationalMatrix candidate(acc.rows(), acc.cols() + 1);
    candidate << acc, e;
    if (rank(candidate) > static_cast<std::size_t>(acc.cols())) {
      acc = candidate;
      out.complement.push_back(i);
    }
  }
  return out;
}

// Coordinates of v in the column basis b (exact, assumes v is in the span).
RationalVector coordinates(const RationalMatrix& b, const RationalVector& v) {
  RationalMatrix aug(b.rows(), b.cols() + 1);
  aug << b, v;
  rref(aug);
  RationalVector out(b.cols());
  for (Eigen::Index i = 0; i < b.cols(); ++i) out(i) = aug(i, b.cols());
  return out;
}

bool diagonalizable(const RationalMatrix& m, const std::vector<std::pair<Rational, int>>& roots) {
  std::size_t total = 0;
  for (const auto& [lambda, mult] : roots) {
    total += nullspace(m - lambda * identity(m.rows())).size();
  }
  return total == static_cast<std::size_t>(m.rows());
}

Eigen::MatrixXd to_double(const RationalMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  }
  return out;
}

}  // namespace

bool LieAlgebra::rational() const {
  for (const auto& a : constants) {
    for (const auto& b : a) {
      for (const auto& c : b) {
        if (!c.is_number()) return false;
      }
    }
  }
  return true;
}

RationalMatrix LieAlgebra::ad(std::size_t i) const {
  if (!rational()) throw LieAlgebraError("structure constants depend on parameters");
  const auto n = static_cast<Eigen::Index>(dimension());
  RationalMatrix m(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) m(k, j) = constants[i][j][k].number();
  }
  return m;
}

RationalVector LieAlgebra::bracket(const RationalVector& a, const RationalVector& b) const {
  const auto n = static_cast<Eigen::Index>(dimension());
  RationalVector out = RationalVector::Constant(n, Rational(0));
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a(i).is_zero()) continue;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (b(j).is_zero()) continue;
      const Rational w = a(i) * b(j);
      for (Eigen::Index k = 0; k < n; ++k) out(k) += w * constants[i][j][k].number();
    }
  }
  return out;
}

std::string LieAlgebra::bracket_text(std::size_t i, std::size_t j) const {
  return combination_text(constants[i][j], names);
}

LieAlgebra structure_constants(const JetSpace& space, std::vector<VectorField> basis,
                               std::vector<std::string> names) {
  const std::size_t n = basis.size();
  if (names.size() != n) throw LieAlgebraError("one name per basis element is required");
  for (const auto& field : basis) {
    if (field.xi.size() != space.dimension()) {
      throw LieAlgebraError("basis field does not match the jet space dimension");
    }
  }
  LieAlgebra algebra;
  algebra.space = space;
  algebra.basis = std::move(basis);
  algebra.names = std::move(names);
  std::vector<Expr> unknowns;
  for (std::size_t m = 0; m < n; ++m) unknowns.push_back(Expr::symbol("sc" + std::to_string(m)));
  const AtomPredicate is_coordinate = [&space](const Expr& a) {
    return a.is(Kind::Jet) || (a.is(Kind::Symbol) && space.has_variable(a.name()));
  };
  auto span_equations = [&](const VectorField& target) {
    std::vector<Expr> eqs;
    const std::size_t comps = space.dimension() + 1;
    for (std::size_t c = 0; c < comps; ++c) {
      std::vector<Expr> terms;
      for (std::size_t m = 0; m < n; ++m) {
        terms.push_back(mul({unknowns[m], algebra.basis[m].components()[c]}));
      }
      terms.push_back(-target.components()[c]);
      for (auto& [mono, coeff] : split_by(add(std::move(terms)), is_coordinate)) {
        eqs.push_back(coeff);
      }
    }
    return eqs;
  };

  const LinearSolution independence =
      solve_linear(span_equations(VectorField::zero(space.dimension())), unknowns);
  if (!independence.free.empty()) throw LieAlgebraError("basis fields are linearly dependent");

  algebra.constants.assign(n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n, Expr(0))));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const VectorField c = commutator(algebra.basis[i], algebra.basis[j], space);
      const LinearSolution sol = solve_linear(span_equations(c), unknowns);
      if (!sol.consistent) {
        throw LieAlgebraError("[" + algebra.names[i] + ", " + algebra.names[j] + "] = " +
                              operator_text(c, space) + " is not in the span of the basis");
      }
      for (std::size_t k = 0; k < n; ++k) {
        const Expr value = canonical_rational(sol.pivots.at(unknowns[k]));
        algebra.constants[i][j][k] = value;
        algebra.constants[j][i][k] = canonical_rational(-value);
      }
    }
  }
  return algebra;
}

bool antisymmetric(const LieAlgebra& algebra) {
  const std::size_t n = algebra.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!canonical_rational(algebra.constants[i][j][k] + algebra.constants[j][i][k])
                 .is_zero()) {
          return false;
        }
      }
    }
  }
  return true;
}

bool satisfies_jacobi(const LieAlgebra& algebra) {
  const std::size_t n = algebra.dimension();
  const auto& c = algebra.constants;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t m = 0; m < n; ++m) {
          std::vector<Expr> terms;
          for (std::size_t l = 0; l < n; ++l) {
            terms.push_back(c[i][j][l] * c[l][k][m]);
            terms.push_back(c[j][k][l] * c[l][i][m]);
            terms.push_back(c[k][i][l] * c[l][j][m]);
          }
          if (!canonical_rational(add(std::move(terms))).is_zero()) return false;
        }
      }
    }
  }
  return true;
}

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix copy = m;
  return rref(copy).size();
}

std::vector<RationalVector> nullspace(const RationalMatrix& m) {
  RationalMatrix r = m;
  const auto pivots = rref(r);
  std::vector<RationalVector> out;
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    if (std::find(pivots.begin(), pivots.end(), col) != pivots.end()) continue;
    RationalVector v = RationalVector::Constant(m.cols(), Rational(0));
    v(col) = Rational(1);
    for (std::size_t p = 0; p < pivots.size(); ++p) {
      v(pivots[p]) = -r(static_cast<Eigen::Index>(p), col);
    }
    out.push_back(v);
  }
  return out;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  const Eigen::Index n = m.rows();
  RationalMatrix aug(n, 2 * n);
  aug << m, identity(n);
  if (rref(aug).size() < static_cast<std::size_t>(n) || !(aug.block(0, 0, n, n) == identity(n))) {
    return std::nullopt;
  }
  return RationalMatrix(aug.block(0, n, n, n));
}

std::vector<Rational> characteristic_polynomial(const RationalMatrix& a) {
  const Eigen::Index n = a.rows();
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
  c[static_cast<std::size_t>(n)] = Rational(1);
  RationalMatrix mk = RationalMatrix::Constant(n, n, Rational(0));
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = multiply(a, mk) + c[static_cast<std::size_t>(n - k + 1)] * identity(n);
    const RationalMatrix am = multiply(a, mk);
    Rational trace(0);
    for (Eigen::Index i = 0; i < n; ++i) trace += am(i, i);
    c[static_cast<std::size_t>(n - k)] = -trace / Rational(k);
  }
  return c;
}

std::optional<std::vector<std::pair<Rational, int>>> rational_roots(
    const std::vector<Rational>& coefficients) {
  std::vector<Rational> c = coefficients;
  while (c.size() > 1 && c.back().is_zero()) c.pop_back();
  std::vector<std::pair<Rational, int>> roots;
  auto record = [&roots](const Rational& r) {
    for (auto& [value, mult] : roots) {
      if (value == r) {
        ++mult;
        return;
      }
    }
    roots.emplace_back(r, 1);
  };
  while (c.size() > 1 && c.front().is_zero()) {
    c.erase(c.begin());
    record(Rational(0));
  }
  while (c.size() > 1) {
    mpz_class lcm = 1;
    for (const auto& x : c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.denominator().get_mpz_t());
    const mpz_class lead = (c.back() * Rational(mpq_class(lcm))).numerator();
    const mpz_class constant = (c.front() * Rational(mpq_class(lcm))).numerator();
    bool found = false;
    for (const auto& p : divisors(constant)) {
      for (const auto& q : divisors(lead)) {
        for (int sign : {1, -1}) {
          const Rational candidate(mpq_class(p * sign, q));
          if (evaluate_poly(c, candidate).is_zero()) {
            record(candidate);
            c = deflate(c, candidate);
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) return std::nullopt;
  }
  std::sort(roots.begin(), roots.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return roots;
}

std::string Identification::summary() const {
  std::ostringstream out;
  out << label;
  if (ab) out << " (a=" << ab->first.str() << ", b=" << ab->second.str() << ")";
  out << "; dim " << dimension << ", derived dim " << derived_dimension << ", center dim "
      << center_dimension;
  return out.str();
}

Identification identify(const LieAlgebra& algebra) {
  Identification id;
  const std::size_t n = algebra.dimension();
  id.dimension = n;
  if (!algebra.rational()) {
    id.label = "unrecognized";
    id.latex = "\\text{unrecognized}";
    return id;
  }
  const DerivedSplit split = split_derived(algebra);
  id.derived_dimension = static_cast<std::size_t>(split.derived.cols());

  // Center: v with [v, X_m] = 0 for all m.
  RationalMatrix center_system(static_cast<Eigen::Index>(n * n), static_cast<Eigen::Index>(n));
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        center_system(static_cast<Eigen::Index>(m * n + k), static_cast<Eigen::Index>(j)) =
            algebra.constants[j][m][k].number();
      }
    }
  }
  id.center_dimension = nullspace(center_system).size();

  const Eigen::Index d = split.derived.cols();
  id.derived_abelian = true;
  for (Eigen::Index a = 0; a < d && id.derived_abelian; ++a) {
    for (Eigen::Index b = a + 1; b < d; ++b) {
      if (!is_zero_matrix(algebra.bracket(split.derived.col(a), split.derived.col(b)))) {
        id.derived_abelian = false;
        break;
      }
    }
  }

  bool all_diagonalizable = true;
  for (const std::size_t e : split.complement) {
    RationalMatrix action(d, d);
    RationalVector basis_e = RationalVector::Constant(static_cast<Eigen::Index>(n), Rational(0));
    basis_e(static_cast<Eigen::Index>(e)) = Rational(1);
    for (Eigen::Index a = 0; a < d; ++a) {
      action.col(a) = coordinates(split.derived, algebra.bracket(split.derived.col(a), basis_e));
    }
    std::vector<Rational> weights;
    if (d > 0) {
      auto roots = rational_roots(characteristic_polynomial(action));
      if (!roots) {
        all_diagonalizable = false;
      } else {
        if (!diagonalizable(action, *roots)) all_diagonalizable = false;
        for (const auto& [value, mult] : *roots) {
          for (int i = 0; i < mult; ++i) weights.push_back(value);
        }
      }
    }
    id.weights.push_back(weights);
  }

  bool complement_abelian = true;
  for (std::size_t a = 0; a < split.complement.size(); ++a) {
    for (std::size_t b = a + 1; b < split.complement.size(); ++b) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!algebra.constants[split.complement[a]][split.complement[b]][k].is_zero()) {
          complement_abelian = false;
        }
      }
    }
  }

  const bool semidirect_abelian = id.derived_abelian && id.center_dimension == 0 &&
                                  all_diagonalizable && complement_abelian;
  auto all_equal_nonzero = [](const std::vector<Rational>& w) {
    return !w.empty() && !w.front().is_zero() &&
           std::all_of(w.begin(), w.end(), [&](const Rational& x) { return x == w.front(); });
  };
  if (id.derived_dimension == 0) {
    id.label = std::to_string(n) + "A1";
    id.latex = std::to_string(n) + "A_{1}";
  } else if (n == 3 && id.derived_dimension == 2 && semidirect_abelian &&
             all_equal_nonzero(id.weights.front())) {
    id.label = "A3,3";
    id.latex = "A_{3,3}";
  } else if (n == 4 && id.derived_dimension == 3 && semidirect_abelian &&
             std::none_of(id.weights.front().begin(), id.weights.front().end(),
                          [](const Rational& w) { return w.is_zero(); })) {
    // Normalize so the weight of largest modulus is 1; among ties choose
    // the lexicographically largest (a, b).
    const auto& w = id.weights.front();
    Rational largest(0);
    for (const auto& x : w) largest = std::max(largest, x.abs());
    std::optional<std::pair<Rational, Rational>> best;
    for (const auto& pivot : w) {
      if (pivot.abs() != largest) continue;
      std::vector<Rational> scaled;
      bool skipped = false;
      for (const auto& x : w) {
        if (!skipped && x == pivot) {
          skipped = true;
          continue;
        }
        scaled.push_back(x / pivot);
      }
      std::sort(scaled.begin(), scaled.end());
      std::pair<Rational, Rational> candidate{scaled[0], scaled[1]};
      if (!best || candidate > *best) best = candidate;
    }
    id.ab = best;
    id.label = "A4,5^ab";
    id.latex = "A_{4,5}^{ab}";
  } else if (n == 5 && id.derived_dimension == 3 && semidirect_abelian) {
    id.label = "3A1xs2A1";
    id.latex = "3A_{1}\\otimes_{s}2A_{1}";
  } else {
    id.label = "unrecognized";
    id.latex = "\\text{unrecognized}";
  }
  return id;
}

ExprMatrix adjoint_matrix(const LieAlgebra& algebra, std::size_t i, const Expr& eps) {
  const RationalMatrix m = algebra.ad(i);
  const Eigen::Index n = m.rows();
  const auto roots = rational_roots(characteristic_polynomial(m));
  if (!roots) {
    throw LieAlgebraError("ad(" + algebra.names[i] + ") has eigenvalues outside Q");
  }
  // Generalized eigenspaces give the Jordan-Chevalley split m = s + nil.
  RationalMatrix basis(n, 0);
  std::vector<std::pair<Rational, Eigen::Index>> blocks;
  for (const auto& [lambda, mult] : *roots) {
    RationalMatrix shifted = m - lambda * identity(n);
    RationalMatrix power = identity(n);
    for (int k = 0; k < mult; ++k) power = multiply(power, shifted);
    const auto space = nullspace(power);
    RationalMatrix extended(n, basis.cols() + static_cast<Eigen::Index>(space.size()));
    extended.leftCols(basis.cols()) = basis;
    for (std::size_t s = 0; s < space.size(); ++s) {
      extended.col(basis.cols() + static_cast<Eigen::Index>(s)) = space[s];
    }
    blocks.emplace_back(lambda, static_cast<Eigen::Index>(space.size()));
    basis = extended;
  }
  const auto basis_inv = inverse(basis);
  if (!basis_inv) throw LieAlgebraError("generalized eigenvectors do not span");
  std::vector<RationalMatrix> projectors;
  RationalMatrix semisimple = RationalMatrix::Constant(n, n, Rational(0));
  Eigen::Index offset = 0;
  for (const auto& [lambda, size] : blocks) {
    RationalMatrix select = RationalMatrix::Constant(n, n, Rational(0));
    for (Eigen::Index k = offset; k < offset + size; ++k) select(k, k) = Rational(1);
    RationalMatrix p = multiply(multiply(basis, select), *basis_inv);
    semisimple += lambda * p;
    projectors.push_back(p);
    offset += size;
  }
  const RationalMatrix nil = m - semisimple;

  // exp(-eps m) = sum_lambda exp(-eps lambda) P_lambda * sum_k (-eps nil)^k / k!
  ExprMatrix out = ExprMatrix::Constant(n, n, Expr(0));
  std::vector<RationalMatrix> nil_powers{identity(n)};
  for (Eigen::Index k = 1; k < n; ++k) nil_powers.push_back(multiply(nil_powers.back(), nil));
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const Expr scale = exp(mul({Expr(-blocks[b].first), eps}));
    for (std::size_t k = 0; k < nil_powers.size(); ++k) {
      const RationalMatrix term = multiply(projectors[b], nil_powers[k]);
      if (is_zero_matrix(term)) continue;
      Rational factorial(1);
      for (std::size_t f = 2; f <= k; ++f) factorial *= Rational(static_cast<long>(f));
      const Expr weight =
          mul({scale, pow(-eps, Expr(static_cast<long>(k))), Expr(Rational(1) / factorial)});
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
          if (!term(r, c).is_zero()) out(r, c) = out(r, c) + mul({Expr(term(r, c)), weight});
        }
      }
    }
  }
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = expand(out(r, c));
  }
  return out;
}

AdjointTable adjoint(const LieAlgebra& algebra, const Expr& eps) {
  AdjointTable table;
  table.eps = eps;
  for (std::size_t i = 0; i < algebra.dimension(); ++i) {
    table.matrices.push_back(adjoint_matrix(algebra, i, eps));
  }
  return table;
}

std::string AdjointTable::entry_text(const LieAlgebra& algebra, std::size_t i,
                                     std::size_t j) const {
  std::vector<Expr> column;
  for (Eigen::Index k = 0; k < matrices[i].rows(); ++k) {
    column.push_back(matrices[i](k, static_cast<Eigen::Index>(j)));
  }
  return combination_text(column, algebra.names);
}

std::vector<Expr> coefficient_symbols(std::size_t n, const std::string& prefix) {
  std::vector<Expr> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(Expr::symbol(prefix + std::to_string(i)));
  return out;
}

InvariantCheck check_invariant(const LieAlgebra& algebra, const Expr& phi,
                               const std::vector<Expr>& coefficients,
                               const ZeroTestOptions& options) {
  const std::size_t n = algebra.dimension();
  if (coefficients.size() != n) throw LieAlgebraError("one coefficient symbol per basis element");
  InvariantCheck check;
  check.invariant = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const Expr& c = algebra.constants[i][j][k];
        if (c.is_zero()) continue;
        terms.push_back(mul({c, coefficients[j], diff(phi, coefficients[k])}));
      }
    }
    ZeroVerdict v = is_zero(add(std::move(terms)), {}, options);
    check.invariant = check.invariant && v.zero();
    check.per_generator.push_back(std::move(v));
  }
  return check;
}

std::vector<double> normalize_numeric(const LieAlgebra& algebra, std::vector<double> v,
                                      double tolerance) {
  const std::size_t n = algebra.dimension();
  std::vector<Eigen::MatrixXd> nilpotent;
  for (std::size_t i = 0; i < n; ++i) {
    const RationalMatrix m = algebra.ad(i);
    RationalMatrix p = m;
    for (std::size_t k = 1; k < n; ++k) p = multiply(p, m);
    if (is_zero_matrix(p)) nilpotent.push_back(to_double(m));
  }
  Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(n));
  auto scale = [&x]() { return std::max(1e-300, x.cwiseAbs().maxCoeff()); };
  auto is_small = [&](double value) { return std::abs(value) <= tolerance * scale(); };
  for (std::size_t pass = 0; pass < n * n + 1; ++pass) {
    bool progress = false;
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(n) && !progress; ++k) {
      if (is_small(x(k))) continue;
      for (const auto& nil : nilpotent) {
        const Eigen::VectorXd first = nil * x;
        const Eigen::VectorXd second = nil * first;
        if (is_small(first(k)) || !is_small(second(k))) continue;
        const double eps = x(k) / first(k);
        Eigen::VectorXd y = x;
        Eigen::VectorXd term = x;
        for (std::size_t m = 1; m <= n; ++m) {
          term = (-eps / static_cast<double>(m)) * (nil * term);
          y += term;
        }
        y(k) = 0.0;
        const double s = std::max(1e-300, y.cwiseAbs().maxCoeff());
        bool keeps_zeros = true;
        for (Eigen::Index z = 0; z < static_cast<Eigen::Index>(n); ++z) {
          if (is_small(x(z)) && std::abs(y(z)) > tolerance * s * 1e3) keeps_zeros = false;
        }
        if (!keeps_zeros) continue;
        x = y;
        progress = true;
        break;
      }
    }
    if (!progress) break;
  }
  const double s = scale();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double value = x(static_cast<Eigen::Index>(i));
    out[i] = std::abs(value) <= tolerance * s * 1e3 ? 0.0 : value;
  }
  return out;
}

namespace {

std::vector<bool> support_of(const std::vector<double>& v) {
  std::vector<bool> s(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) s[i] = v[i] != 0.0;
  return s;
}

std::vector<bool> support_of(const Representative& rep) {
  std::vector<bool> s(rep.coefficients.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = !rep.coefficients[i].is_zero();
  return s;
}

std::string vector_text(const std::vector<double>& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << ")";
  return out.str();
}

std::vector<double> numeric_representative(const Representative& rep, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::bernoulli_distribution sign(0.5);
  NumericPoint point;
  for (const auto& c : rep.coefficients) {
    for (const auto& leaf : leaf_atoms(c)) {
      if (!point.leaves.count(leaf)) point.leaves.emplace(leaf, (sign(rng) ? 1 : -1) * mag(rng));
    }
  }
  std::vector<double> out;
  for (const auto& c : rep.coefficients) out.push_back(evaluate(c, point));
  return out;
}

std::vector<std::size_t> matches(const OptimalSystem& system, const std::vector<double>& landed) {
  std::vector<std::size_t> out;
  const auto s = support_of(landed);
  for (std::size_t r = 0; r < system.representatives.size(); ++r) {
    if (support_of(system.representatives[r]) == s) out.push_back(r);
  }
  return out;
}

}  // namespace

OptimalSystemReport optimal_system_check(const LieAlgebra& algebra, const OptimalSystem& system,
                                         const OptimalSystemOptions& options) {
  OptimalSystemReport report;
  const std::size_t n = algebra.dimension();
  const std::vector<Expr> a = coefficient_symbols(n);

  // (a) invariants of the adjoint action.
  report.invariants_ok = true;
  for (const auto& phi : system.invariants) {
    const InvariantCheck check = check_invariant(algebra, phi, a, options.zero);
    if (!check.invariant) {
      report.invariants_ok = false;
      report.invariant_failures.push_back(to_text(phi));
    }
  }

  std::mt19937_64 rng(options.seed);

  // (b) each representative normalizes to itself; pairs are separated by
  // invariant values or by their normal forms.
  report.inequivalence_ok = true;
  const std::size_t reps = system.representatives.size();
  std::vector<std::vector<double>> samples;
  for (const auto& rep : system.representatives) {
    if (rep.coefficients.size() != n) throw LieAlgebraError("representative has wrong length");
    samples.push_back(numeric_representative(rep, rng));
  }
  for (std::size_t r = 0; r < reps; ++r) {
    const auto landed = normalize_numeric(algebra, samples[r], options.tolerance);
    const auto m = matches(system, landed);
    if (m.size() != 1 || m.front() != r) {
      report.inequivalence_ok = false;
      report.inequivalence_notes.push_back("{" + system.representatives[r].label +
                                           "} normalizes to " + vector_text(landed));
    }
  }
  auto invariant_values = [&](const std::vector<double>& v) {
    NumericPoint point;
    for (std::size_t i = 0; i < n; ++i) point.leaves.emplace(a[i], v[i]);
    std::vector<double> out;
    for (const auto& phi : system.invariants) out.push_back(evaluate(phi, point));
    return out;
  };
  for (std::size_t r = 0; r < reps; ++r) {
    for (std::size_t s = r + 1; s < reps; ++s) {
      const auto vr = invariant_values(samples[r]);
      const auto vs = invariant_values(samples[s]);
      bool separated = false;
      for (std::size_t k = 0; k < vr.size(); ++k) {
        if ((std::abs(vr[k]) > options.tolerance) != (std::abs(vs[k]) > options.tolerance)) {
          separated = true;
        }
      }
      if (!separated) {
        report.inequivalence_notes.push_back("{" + system.representatives[r].label + "} and {" +
                                             system.representatives[s].label +
                                             "} share invariant zero pattern; separated by "
                                             "normal form");
      }
    }
  }

  // (c) random elements land on exactly one representative.
  report.completeness_ok = true;
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::bernoulli_distribution sign(0.5);
  std::uniform_int_distribution<unsigned> pattern(1, (1u << n) - 1);
  for (int trial = 0; trial < options.trials; ++trial) {
    const unsigned mask = pattern(rng);
    std::vector<double> v(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) v[i] = (sign(rng) ? 1 : -1) * mag(rng);
    }
    const auto landed = normalize_numeric(algebra, v, options.tolerance);
    const auto m = matches(system, landed);
    ++report.trials;
    if (m.size() != 1) {
      report.completeness_ok = false;
      report.counterexamples.push_back(
          {v, landed, m.empty() ? "no representative matches" : "several representatives match"});
    }
  }

  // (d) degenerate strata: hyperplanes where the coefficient removed by a
  // nilpotent map has a vanishing linear multiplier.
  std::set<std::vector<long>> seen;
  for (std::size_t i = 0; i < n; ++i) {
    const RationalMatrix m = algebra.ad(i);
    RationalMatrix p = m;
    for (std::size_t k = 1; k < n; ++k) p = multiply(p, m);
    if (!is_zero_matrix(p)) continue;
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
      std::vector<std::size_t> support;
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (!m(k, j).is_zero()) support.push_back(static_cast<std::size_t>(j));
      }
      if (support.size() < 2) continue;
      std::vector<long> key;
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        key.push_back(m(k, j).is_zero() ? 0 : (m(k, j).sign() > 0 ? 1 : -1));
      }
      if (!seen.insert(key).second) continue;
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> v(n);
        for (auto& x : v) x = (sign(rng) ? 1 : -1) * mag(rng);
        // Solve the linear form for its last coefficient.
        const std::size_t last = support.back();
        double partial = 0.0;
        for (std::size_t j : support) {
          if (j != last) partial += m(k, static_cast<Eigen::Index>(j)).to_double() * v[j];
        }
        v[last] = -partial / m(k, static_cast<Eigen::Index>(last)).to_double();
        const auto landed = normalize_numeric(algebra, v, options.tolerance);
        if (matches(system, landed).size() != 1) {
          report.degenerate_counterexamples.push_back(
              {v, landed, "stratum where " + algebra.names[i] + " cannot remove the " +
                              algebra.names[static_cast<std::size_t>(k)] + " coefficient"});
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace liesym
