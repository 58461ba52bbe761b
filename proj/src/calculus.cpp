#include "liesym/calculus.hpp"

#include <algorithm>
#include <stdexcept>

namespace liesym {

namespace {

bool kept(const Expr& e, const ExpandOptions& options) {
  return e.is(Kind::Add) && options.keep_sum && options.keep_sum(e);
}

void gather_leaves(const Expr& e, std::set<Expr, ExprLess>& out) {
  switch (e.kind()) {
    case Kind::Number:
      return;
    case Kind::Symbol:
    case Kind::Jet:
      out.insert(e);
      return;
    default:
      for (const auto& a : e.args()) gather_leaves(a, out);
  }
}

void gather_functions(const Expr& e, std::set<Expr, ExprLess>& out) {
  if (e.is(Kind::Func)) out.insert(e);
  for (const auto& a : e.args()) gather_functions(a, out);
}

std::vector<Expr> multiply_out(const std::vector<Expr>& left, const std::vector<Expr>& right) {
  std::vector<Expr> out;
  out.reserve(left.size() * right.size());
  for (const auto& a : left) {
    for (const auto& b : right) out.push_back(mul({a, b}));
  }
  return out;
}

// Expands a product whose factors are already expanded.
Expr distribute(const std::vector<Expr>& factors, const ExpandOptions& options) {
  std::vector<Expr> acc{Expr(1)};
  std::vector<Expr> plain;
  for (const auto& f : factors) {
    if (f.is(Kind::Add) && !kept(f, options)) {
      acc = multiply_out(acc, terms_of(f));
    } else {
      plain.push_back(f);
    }
  }
  if (!plain.empty()) {
    Expr common = mul(plain);
    if (common.is(Kind::Add) && !kept(common, options)) {
      acc = multiply_out(acc, terms_of(common));
    } else {
      for (auto& a : acc) a = mul({a, common});
    }
  }
  Expr result = add(std::move(acc));
  return result;
}

// Sparse polynomial over Expr atoms used for exact division.
using Monomial = std::vector<std::pair<Expr, long>>;

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    // Lexicographic: compare exponents of atoms in descending atom order.
    auto ia = a.rbegin();
    auto ib = b.rbegin();
    while (ia != a.rend() && ib != b.rend()) {
      const auto c = compare(ia->first, ib->first);
      if (c > 0) return false;  // a has a larger atom with positive exponent
      if (c < 0) return true;
      if (ia->second != ib->second) return ia->second < ib->second;
      ++ia;
      ++ib;
    }
    return ia == a.rend() && ib != b.rend();
  }
};

using Poly = std::map<Monomial, Rational, MonomialLess>;

std::optional<Poly> to_poly(const Expr& expanded) {
  Poly p;
  for (const auto& term : terms_of(expanded)) {
    auto [c, rest] = split_coefficient(term);
    ExprMap<long> exps;
    if (!rest.is_one()) {
      for (const auto& f : factors_of(rest)) {
        auto [base, e] = as_power(f);
        if (e.is_integer() && e.number().sign() > 0 && !base.is(Kind::Add)) {
          exps[base] += *e.number().to_long();
        } else {
          if (f.is(Kind::Add)) return std::nullopt;
          exps[f] += 1;
        }
      }
    }
    Monomial m(exps.begin(), exps.end());
    p[m] += c;
  }
  for (auto it = p.begin(); it != p.end();) {
    it = it->second.is_zero() ? p.erase(it) : std::next(it);
  }
  return p;
}

Expr from_poly(const Poly& p) {
  std::vector<Expr> terms;
  for (const auto& [m, c] : p) {
    std::vector<Expr> f{Expr(c)};
    for (const auto& [atom, e] : m) f.push_back(pow(atom, Expr(e)));
    terms.push_back(mul(std::move(f)));
  }
  return add(std::move(terms));
}

std::optional<Monomial> divide_monomial(const Monomial& a, const Monomial& b) {
  ExprMap<long> exps(a.begin(), a.end());
  for (const auto& [atom, e] : b) {
    auto it = exps.find(atom);
    if (it == exps.end() || it->second < e) return std::nullopt;
    it->second -= e;
    if (it->second == 0) exps.erase(it);
  }
  return Monomial(exps.begin(), exps.end());
}

Monomial multiply_monomial(const Monomial& a, const Monomial& b) {
  ExprMap<long> exps(a.begin(), a.end());
  for (const auto& [atom, e] : b) exps[atom] += e;
  return Monomial(exps.begin(), exps.end());
}

}  // namespace

std::vector<Expr> terms_of(const Expr& e) {
  if (e.is(Kind::Add)) return {e.args().begin(), e.args().end()};
  if (e.is_zero()) return {};
  return {e};
}

std::vector<Expr> factors_of(const Expr& e) {
  if (e.is(Kind::Mul)) return {e.args().begin(), e.args().end()};
  return {e};
}

Expr diff(const Expr& e, const Expr& var) {
  switch (e.kind()) {
    case Kind::Number:
      return Expr(0);
    case Kind::Symbol:
    case Kind::Jet:
      return e == var ? Expr(1) : Expr(0);
    case Kind::Func: {
      Expr da = diff(e.arg(0), var);
      if (da.is_zero()) return da;
      return mul({Expr::func(e.name(), e.order() + 1, e.arg(0)), da});
    }
    case Kind::Exp: {
      Expr da = diff(e.arg(0), var);
      if (da.is_zero()) return da;
      return mul({e, da});
    }
    case Kind::Log: {
      Expr da = diff(e.arg(0), var);
      if (da.is_zero()) return da;
      return mul({da, pow(e.arg(0), Expr(-1))});
    }
    case Kind::Pow: {
      const Expr& base = e.arg(0);
      const Expr& ex = e.arg(1);
      Expr db = diff(base, var);
      Expr dex = ex.is_number() ? Expr(0) : diff(ex, var);
      if (dex.is_zero()) {
        if (db.is_zero()) return db;
        return mul({ex, pow(base, add({ex, Expr(-1)})), db});
      }
      return mul({e, add({mul({dex, log(base)}), mul({ex, db, pow(base, Expr(-1))})})});
    }
    case Kind::Mul: {
      std::vector<Expr> terms;
      const auto args = e.args();
      for (std::size_t i = 0; i < args.size(); ++i) {
        Expr d = diff(args[i], var);
        if (d.is_zero()) continue;
        std::vector<Expr> f;
        f.reserve(args.size());
        for (std::size_t j = 0; j < args.size(); ++j) f.push_back(j == i ? d : args[j]);
        terms.push_back(mul(std::move(f)));
      }
      return add(std::move(terms));
    }
    case Kind::Add: {
      std::vector<Expr> terms;
      for (const auto& a : e.args()) {
        Expr d = diff(a, var);
        if (!d.is_zero()) terms.push_back(std::move(d));
      }
      return add(std::move(terms));
    }
  }
  return Expr(0);
}

Expr diff(const Expr& e, const Expr& var, int times) {
  Expr out = e;
  for (int i = 0; i < times; ++i) out = diff(out, var);
  return out;
}

bool depends_on(const Expr& e, const Expr& atom) {
  switch (e.kind()) {
    case Kind::Number:
      return false;
    case Kind::Symbol:
    case Kind::Jet:
      return e == atom;
    default:
      if (e == atom) return true;
      for (const auto& a : e.args()) {
        if (depends_on(a, atom)) return true;
      }
      return false;
  }
}

bool depends_on(const Expr& e, const AtomPredicate& pred) {
  switch (e.kind()) {
    case Kind::Number:
      return false;
    case Kind::Symbol:
    case Kind::Jet:
      return pred(e);
    default:
      for (const auto& a : e.args()) {
        if (depends_on(a, pred)) return true;
      }
      return false;
  }
}

std::set<Expr, ExprLess> leaf_atoms(const Expr& e) {
  std::set<Expr, ExprLess> out;
  gather_leaves(e, out);
  return out;
}

std::set<Expr, ExprLess> jets_of(const Expr& e) {
  std::set<Expr, ExprLess> out;
  for (const auto& a : leaf_atoms(e)) {
    if (a.is(Kind::Jet)) out.insert(a);
  }
  return out;
}

std::set<Expr, ExprLess> function_atoms(const Expr& e) {
  std::set<Expr, ExprLess> out;
  gather_functions(e, out);
  return out;
}

Expr subs(const Expr& e, const ExprMap<Expr>& replacements) {
  if (replacements.empty() || e.is_number()) return e;
  if (auto it = replacements.find(e); it != replacements.end()) return it->second;
  if (e.args().empty()) return e;
  std::vector<Expr> args;
  args.reserve(e.size());
  bool changed = false;
  for (const auto& a : e.args()) {
    args.push_back(subs(a, replacements));
    changed = changed || !args.back().same_node(a);
  }
  return changed ? rebuild(e, std::move(args)) : e;
}

Expr subs(const Expr& e, const Expr& from, const Expr& to) {
  ExprMap<Expr> m;
  m.emplace(from, to);
  return subs(e, m);
}

Expr substitute_function(const Expr& e, const std::string& name, const Expr& family,
                         const Expr& placeholder) {
  std::vector<Expr> derivatives{family};
  auto derivative = [&](int k) {
    while (static_cast<int>(derivatives.size()) <= k) {
      derivatives.push_back(diff(derivatives.back(), placeholder));
    }
    return derivatives[k];
  };
  std::function<Expr(const Expr&)> walk = [&](const Expr& x) -> Expr {
    if (x.args().empty()) return x;
    std::vector<Expr> args;
    args.reserve(x.size());
    for (const auto& a : x.args()) args.push_back(walk(a));
    if (x.is(Kind::Func) && x.name() == name) {
      return subs(derivative(x.order()), placeholder, args.front());
    }
    return rebuild(x, std::move(args));
  };
  return walk(e);
}

Expr expand(const Expr& e, const ExpandOptions& options) {
  switch (e.kind()) {
    case Kind::Number:
    case Kind::Symbol:
    case Kind::Jet:
      return e;
    case Kind::Func:
      return Expr::func(e.name(), e.order(), expand(e.arg(0), options));
    case Kind::Exp:
      return exp(e.arg(0));
    case Kind::Log:
      return log(expand(e.arg(0), options));
    case Kind::Pow: {
      if (kept(e.arg(0), options)) return e;
      Expr base = expand(e.arg(0), options);
      const Expr& ex = e.arg(1);
      if (ex.is_integer() && ex.number().sign() > 0 && base.is(Kind::Add) && !kept(base, options)) {
        const long n = *ex.number().to_long();
        const std::vector<Expr> base_terms = terms_of(base);
        std::vector<Expr> acc = base_terms;
        for (long i = 1; i < n; ++i) acc = multiply_out(acc, base_terms);
        return add(std::move(acc));
      }
      Expr p = pow(base, ex);
      if (p.is(Kind::Mul)) return distribute(factors_of(p), options);
      return p;
    }
    case Kind::Mul: {
      std::vector<Expr> factors;
      factors.reserve(e.size());
      for (const auto& f : e.args()) factors.push_back(expand(f, options));
      return distribute(factors, options);
    }
    case Kind::Add: {
      if (kept(e, options)) return e;
      std::vector<Expr> terms;
      terms.reserve(e.size());
      for (const auto& t : e.args()) terms.push_back(expand(t, options));
      return add(std::move(terms));
    }
  }
  return e;
}

Fraction to_fraction(const Expr& e, const ExpandOptions& options) {
  Expr x = expand(e, options);
  ExprMap<long> den;
  for (const auto& term : terms_of(x)) {
    for (const auto& f : factors_of(term)) {
      auto [base, ex] = as_power(f);
      if (ex.is_integer() && ex.number().sign() < 0) {
        long k = -*ex.number().to_long();
        auto& slot = den[base];
        slot = std::max(slot, k);
      }
    }
  }
  if (den.empty()) return {x, Expr(1)};
  std::vector<Expr> dfactors;
  for (const auto& [base, k] : den) dfactors.push_back(pow(base, Expr(k)));
  Expr d = mul(dfactors);
  std::vector<Expr> terms;
  for (const auto& term : terms_of(x)) terms.push_back(expand(mul({term, d}), options));
  return {add(std::move(terms)), d};
}

std::optional<Expr> divide_exact(const Expr& numerator, const Expr& divisor) {
  if (divisor.is_zero()) throw std::domain_error("division by zero");
  auto num = to_poly(expand(numerator));
  auto div = to_poly(expand(divisor));
  if (!num || !div || div->empty()) return std::nullopt;
  Poly rem = *num;
  Poly quotient;
  const auto& [lead_m, lead_c] = *div->rbegin();
  for (int guard = 0; !rem.empty(); ++guard) {
    if (guard > 100000) return std::nullopt;
    const auto& [rm, rc] = *rem.rbegin();
    auto qm = divide_monomial(rm, lead_m);
    if (!qm) return std::nullopt;
    const Rational qc = rc / lead_c;
    quotient[*qm] += qc;
    for (const auto& [dm, dc] : *div) {
      Monomial m = multiply_monomial(*qm, dm);
      Rational& slot = rem[m];
      slot -= qc * dc;
      if (slot.is_zero()) rem.erase(m);
    }
  }
  return from_poly(quotient);
}

Expr canonical_rational(const Expr& e) {
  if (e.is_number() || e.is(Kind::Symbol) || e.is(Kind::Jet)) return e;
  Fraction fr = to_fraction(e);
  if (fr.denominator.is_one()) return fr.numerator;
  Expr num = fr.numerator;
  if (num.is_zero()) return num;
  std::vector<Expr> remaining;
  for (const auto& f : factors_of(fr.denominator)) {
    auto [base, ex] = as_power(f);
    long k = *ex.number().to_long();
    while (k > 0) {
      auto q = divide_exact(num, base);
      if (!q) break;
      num = *q;
      --k;
    }
    if (k > 0) remaining.push_back(pow(base, Expr(-k)));
  }
  remaining.push_back(num);
  return mul(std::move(remaining));
}

ExprMap<Expr> collect(const Expr& e, const std::vector<Expr>& basis) {
  ExprMap<std::vector<Expr>> parts;
  parts[Expr(1)];
  auto in_basis = [&](const Expr& x) {
    return std::find(basis.begin(), basis.end(), x) != basis.end();
  };
  for (const auto& term : terms_of(expand(e))) {
    std::vector<Expr> mono;
    std::vector<Expr> coeff;
    for (const auto& f : factors_of(term)) {
      auto [base, ex] = as_power(f);
      if (in_basis(base)) {
        if (!ex.is_integer() || ex.number().sign() < 0) {
          throw std::invalid_argument("expression is not polynomial in the collection basis");
        }
        mono.push_back(f);
      } else if (depends_on(f, in_basis)) {
        throw std::invalid_argument("expression is not polynomial in the collection basis");
      } else {
        coeff.push_back(f);
      }
    }
    parts[mul(std::move(mono))].push_back(mul(std::move(coeff)));
  }
  ExprMap<Expr> out;
  for (auto& [m, cs] : parts) out.emplace(m, add(std::move(cs)));
  return out;
}

ExprMap<Expr> split_by(const Expr& e, const AtomPredicate& is_variable,
                       const ExpandOptions& options) {
  ExprMap<std::vector<Expr>> parts;
  for (const auto& term : terms_of(expand(e, options))) {
    std::vector<Expr> mono;
    std::vector<Expr> coeff;
    for (const auto& f : factors_of(term)) {
      (depends_on(f, is_variable) ? mono : coeff).push_back(f);
    }
    parts[mul(std::move(mono))].push_back(mul(std::move(coeff)));
  }
  ExprMap<Expr> out;
  for (auto& [m, cs] : parts) {
    Expr c = add(std::move(cs));
    if (!c.is_zero()) out.emplace(m, std::move(c));
  }
  return out;
}

Expr FactoredCoefficient::value() const {
  std::vector<Expr> f = common;
  f.push_back(remainder);
  return mul(std::move(f));
}

namespace {

struct Piece {
  std::vector<Expr> factors;
  Expr monomial;
};

std::vector<Piece> factored_pieces(const Expr& e, const AtomPredicate& is_variable,
                                   const ExpandOptions& options) {
  if (!depends_on(e, is_variable)) return {Piece{{e}, Expr(1)}};
  if (e.is(Kind::Add) && !kept(e, options)) {
    std::vector<Piece> out;
    for (const auto& t : e.args()) {
      auto p = factored_pieces(t, is_variable, options);
      out.insert(out.end(), p.begin(), p.end());
    }
    return out;
  }
  auto cross = [](const std::vector<Piece>& a, const std::vector<Piece>& b) {
    std::vector<Piece> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
      for (const auto& y : b) {
        Piece p;
        p.factors = x.factors;
        p.factors.insert(p.factors.end(), y.factors.begin(), y.factors.end());
        p.monomial = mul({x.monomial, y.monomial});
        out.push_back(std::move(p));
      }
    }
    return out;
  };
  if (e.is(Kind::Mul)) {
    std::vector<Piece> acc{Piece{{}, Expr(1)}};
    for (const auto& f : e.args()) acc = cross(acc, factored_pieces(f, is_variable, options));
    return acc;
  }
  if (e.is(Kind::Pow) && e.arg(1).is_integer() && e.arg(1).number().sign() > 0 &&
      e.arg(0).is(Kind::Add) && !kept(e.arg(0), options)) {
    auto base = factored_pieces(e.arg(0), is_variable, options);
    std::vector<Piece> acc = base;
    for (long i = 1; i < *e.arg(1).number().to_long(); ++i) acc = cross(acc, base);
    return acc;
  }
  return {Piece{{}, e}};
}

// Factor multiset: numeric coefficient plus base -> numeric exponent.
struct FactorSet {
  Rational coeff{1};
  ExprMap<Rational> powers;
};

FactorSet factor_set(const std::vector<Expr>& factors) {
  FactorSet s;
  std::vector<Expr> stack(factors.begin(), factors.end());
  while (!stack.empty()) {
    Expr f = stack.back();
    stack.pop_back();
    if (f.is_number()) {
      s.coeff *= f.number();
    } else if (f.is(Kind::Mul)) {
      for (const auto& a : f.args()) stack.push_back(a);
    } else {
      auto [base, ex] = as_power(f);
      if (ex.is_number()) {
        s.powers[base] += ex.number();
      } else {
        s.powers[f] += Rational(1);
      }
    }
  }
  return s;
}

}  // namespace

ExprMap<FactoredCoefficient> split_factored(const Expr& e, const AtomPredicate& is_variable,
                                            const ExpandOptions& options) {
  ExprMap<std::vector<FactorSet>> groups;
  for (auto& piece : factored_pieces(e, is_variable, options)) {
    groups[piece.monomial].push_back(factor_set(piece.factors));
  }
  ExprMap<FactoredCoefficient> out;
  for (auto& [mono, sets] : groups) {
    ExprMap<Rational> common = sets.front().powers;
    for (auto it = common.begin(); it != common.end();) {
      Rational lowest = it->second;
      bool everywhere = true;
      for (const auto& s : sets) {
        auto f = s.powers.find(it->first);
        if (f == s.powers.end()) {
          everywhere = false;
          break;
        }
        lowest = std::min(lowest, f->second);
      }
      if (!everywhere || lowest.sign() <= 0) {
        it = common.erase(it);
      } else {
        it->second = lowest;
        ++it;
      }
    }
    std::vector<Expr> terms;
    for (const auto& s : sets) {
      std::vector<Expr> f{Expr(s.coeff)};
      for (const auto& [base, ex] : s.powers) {
        Rational left = ex;
        if (auto c = common.find(base); c != common.end()) left -= c->second;
        if (!left.is_zero()) f.push_back(pow(base, Expr(left)));
      }
      terms.push_back(mul(std::move(f)));
    }
    Expr remainder = expand(add(std::move(terms)));
    if (remainder.is_zero()) continue;
    FactoredCoefficient fc;
    for (const auto& [base, ex] : common) fc.common.push_back(pow(base, Expr(ex)));
    fc.remainder = remainder;
    out.emplace(mono, std::move(fc));
  }
  return out;
}

std::optional<int> polynomial_degree(const Expr& e, const Expr& var) {
  int degree = 0;
  for (const auto& term : terms_of(expand(e))) {
    int d = 0;
    for (const auto& f : factors_of(term)) {
      auto [base, ex] = as_power(f);
      if (base == var) {
        if (!ex.is_integer() || ex.number().sign() < 0) return std::nullopt;
        d += static_cast<int>(*ex.number().to_long());
      } else if (depends_on(f, var)) {
        return std::nullopt;
      }
    }
    degree = std::max(degree, d);
  }
  return degree;
}

}  // namespace liesym
