#include "liesym/linear_solve.hpp"

#include <algorithm>

#include "liesym/calculus.hpp"

namespace liesym {

namespace {

Expr simplify_entry(const Expr& e) { return canonical_rational(e); }

bool structurally_nonzero(const Expr& e) { return !simplify_entry(e).is_zero(); }

}  // namespace

Expr LinearSolution::apply(const Expr& e) const { return expand(subs(e, pivots)); }

LinearSolution solve_linear(const std::vector<Expr>& equations, const std::vector<Expr>& unknowns,
                            const AssumptionLedger& ledger, const LinearSolveOptions& options) {
  const std::size_t n = unknowns.size();
  std::vector<std::size_t> column_order(n);
  for (std::size_t i = 0; i < n; ++i) column_order[i] = options.reverse_order ? n - 1 - i : i;

  ExprMap<Expr> zero_all;
  for (const auto& x : unknowns) zero_all.emplace(x, Expr(0));

  // Row layout: n coefficients followed by the constant term.
  std::vector<std::vector<Expr>> rows;
  for (const auto& eq : equations) {
    std::vector<Expr> row(n + 1);
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      Expr c = diff(eq, unknowns[j]);
      for (const auto& x : unknowns) {
        if (depends_on(c, x)) throw SolveError("equation is not linear in the unknowns");
      }
      row[j] = simplify_entry(c);
      any = any || !row[j].is_zero();
    }
    row[n] = simplify_entry(subs(eq, zero_all));
    if (any || !row[n].is_zero()) rows.push_back(std::move(row));
  }

  LinearSolution sol;
  sol.unknowns = unknowns;
  std::vector<std::size_t> pivot_row_of(n, static_cast<std::size_t>(-1));
  std::size_t next_row = 0;
  for (const std::size_t col : column_order) {
    // Prefer a numeric pivot over a symbolic one.
    std::size_t best = rows.size();
    for (std::size_t r = next_row; r < rows.size(); ++r) {
      if (rows[r][col].is_zero()) continue;
      if (best == rows.size() || (rows[r][col].is_number() && !rows[best][col].is_number())) {
        best = r;
      }
    }
    if (best == rows.size()) continue;
    std::swap(rows[next_row], rows[best]);
    auto& prow = rows[next_row];
    const Expr pivot = prow[col];
    if (!pivot.is_number() && !ledger.known_nonzero(pivot)) sol.assumptions.push_back(pivot);
    const Expr inverse = pow(pivot, Expr(-1));
    for (auto& entry : prow) entry = simplify_entry(mul({entry, inverse}));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == next_row || rows[r][col].is_zero()) continue;
      const Expr factor = rows[r][col];
      for (std::size_t j = 0; j <= n; ++j) {
        if (prow[j].is_zero()) continue;
        rows[r][j] = simplify_entry(rows[r][j] - mul({factor, prow[j]}));
      }
    }
    pivot_row_of[col] = next_row;
    ++next_row;
  }

  for (std::size_t r = next_row; r < rows.size(); ++r) {
    if (structurally_nonzero(rows[r][n])) {
      sol.consistent = false;
      sol.inconsistency = rows[r][n];
      return sol;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (pivot_row_of[j] == static_cast<std::size_t>(-1)) sol.free.push_back(unknowns[j]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (pivot_row_of[j] == static_cast<std::size_t>(-1)) continue;
    const auto& row = rows[pivot_row_of[j]];
    std::vector<Expr> terms{-row[n]};
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j || row[k].is_zero()) continue;
      terms.push_back(-mul({row[k], unknowns[k]}));
    }
    sol.pivots.emplace(unknowns[j], expand(add(std::move(terms))));
  }
  return sol;
}

std::optional<SingleSolution> solve_for(const Expr& e, const Expr& var) {
  const Fraction fr = to_fraction(e);
  const auto degree = polynomial_degree(fr.numerator, var);
  if (!degree || *degree == 0) return std::nullopt;
  const auto parts = collect(fr.numerator, {var});
  auto coefficient = [&](int k) {
    const Expr key = k == 0 ? Expr(1) : pow(var, Expr(k));
    auto it = parts.find(key);
    return it == parts.end() ? Expr(0) : it->second;
  };
  if (*degree == 1) {
    const Expr a = coefficient(1);
    return SingleSolution{canonical_rational(-coefficient(0) / a), a};
  }
  if (*degree == 2) {
    // a (var - r)^2 with r = -b / (2a) when the discriminant vanishes.
    const Expr a = coefficient(2);
    const Expr b = coefficient(1);
    const Expr c = coefficient(0);
    const Expr disc = canonical_rational(b * b - Expr(4) * a * c);
    if (!disc.is_zero()) return std::nullopt;
    return SingleSolution{canonical_rational(-b / (Expr(2) * a)), a};
  }
  return std::nullopt;
}

}  // namespace liesym
