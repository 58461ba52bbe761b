#include "liesym/expr.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "liesym/calculus.hpp"

namespace liesym {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t node_hash(const Node& n) {
  std::size_t h = static_cast<std::size_t>(n.kind) * 0x100000001b3ULL;
  switch (n.kind) {
    case Kind::Number:
      return mix(h, n.number.hash());
    case Kind::Symbol:
      return mix(h, std::hash<std::string>{}(n.name));
    case Kind::Jet:
      h = mix(h, std::hash<std::string>{}(n.name));
      for (const auto& v : n.index) h = mix(h, std::hash<std::string>{}(v));
      return h;
    case Kind::Func:
      h = mix(h, std::hash<std::string>{}(n.name));
      h = mix(h, static_cast<std::size_t>(n.order));
      break;
    default:
      break;
  }
  for (const auto& a : n.args) h = mix(h, a.hash());
  return h;
}

const Expr& zero_expr() {
  static const Expr z = Expr(Rational(0));
  return z;
}

const Expr& one_expr() {
  static const Expr o = Expr(Rational(1));
  return o;
}

struct PowerGroup {
  Rational numeric{0};
  std::vector<Expr> symbolic;
};

// Largest integer root of a non-negative integer, if exact.
std::optional<mpz_class> exact_root(const mpz_class& value, unsigned long degree) {
  mpz_class root;
  if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), degree) != 0) return root;
  return std::nullopt;
}

// Multiplies `base^exponent` (numeric base, numeric exponent) into the
// coefficient where exact, pushing any irrational remainder as a factor.
void emit_number_power(const Rational& base, const Rational& exponent, Rational& coeff,
                       std::vector<Expr>& out) {
  if (exponent.is_zero()) return;
  if (auto n = exponent.to_long()) {
    coeff *= base.pow(*n);
    return;
  }
  if (base.sign() <= 0) {
    out.push_back(Expr::make_raw(Kind::Pow, {Expr(base), Expr(exponent)}));
    return;
  }
  const Rational whole = exponent.floor();
  const Rational frac = exponent - whole;
  coeff *= base.pow(*whole.to_long());
  const mpz_class den = frac.denominator();
  if (den.fits_ulong_p()) {
    auto num_root = exact_root(base.numerator(), den.get_ui());
    auto den_root = exact_root(base.denominator(), den.get_ui());
    if (num_root && den_root) {
      Rational root(mpq_class(*num_root, *den_root));
      coeff *= root.pow(frac.numerator().get_si());
      return;
    }
  }
  out.push_back(Expr::make_raw(Kind::Pow, {Expr(base), Expr(frac)}));
}

// Content of a canonical sum: gcd of the numerators over the lcm of the
// denominators, signed like the leading term.
Rational leading_coefficient(const Expr& sum) {
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& t : sum.args()) {
    const Rational c = t.is_number() ? t.number() : split_coefficient(t).first;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.numerator().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.denominator().get_mpz_t());
  }
  const Expr& first = sum.arg(0);
  const Rational lead = first.is_number() ? first.number() : split_coefficient(first).first;
  Rational content(mpq_class(num_gcd, den_lcm));
  return lead.sign() < 0 ? -content : content;
}

Expr scale_sum(const Expr& sum, const Rational& factor) {
  std::vector<Expr> terms;
  terms.reserve(sum.size());
  for (const auto& t : sum.args()) terms.push_back(Expr(factor) * t);
  return add(std::move(terms));
}

Expr times_coefficient(const Rational& c, const Expr& monomial) {
  if (c.is_one()) return monomial;
  if (monomial.is(Kind::Mul)) {
    std::vector<Expr> args;
    args.reserve(monomial.size() + 1);
    args.emplace_back(c);
    for (const auto& a : monomial.args()) args.push_back(a);
    return Expr::make_raw(Kind::Mul, std::move(args));
  }
  return Expr::make_raw(Kind::Mul, {Expr(c), monomial});
}

}  // namespace

MultiIndex make_index(std::vector<std::string> vars) {
  std::sort(vars.begin(), vars.end());
  return vars;
}

MultiIndex extend_index(const MultiIndex& index, const std::string& var) {
  MultiIndex out = index;
  out.insert(std::upper_bound(out.begin(), out.end(), var), var);
  return out;
}

std::string index_string(const MultiIndex& index) {
  std::string s;
  for (const auto& v : index) s += v;
  return s;
}

Expr::Expr() : Expr(zero_expr()) {}

Expr::Expr(long n) : Expr(Rational(n)) {}

Expr::Expr(const Rational& r) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Number;
  node->number = r;
  node->hash = node_hash(*node);
  node_ = std::move(node);
}

Expr Expr::symbol(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Symbol;
  node->name = std::move(name);
  node->hash = node_hash(*node);
  return Expr(std::shared_ptr<const Node>(std::move(node)));
}

Expr Expr::jet(std::string dep, MultiIndex index) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Jet;
  node->name = std::move(dep);
  std::sort(index.begin(), index.end());
  node->order = static_cast<int>(index.size());
  node->index = std::move(index);
  node->hash = node_hash(*node);
  return Expr(std::shared_ptr<const Node>(std::move(node)));
}

Expr Expr::func(std::string name, int order, Expr arg) {
  if (order < 0) throw std::invalid_argument("negative derivative order");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Func;
  node->name = std::move(name);
  node->order = order;
  node->args.push_back(std::move(arg));
  node->hash = node_hash(*node);
  return Expr(std::shared_ptr<const Node>(std::move(node)));
}

Expr Expr::make_raw(Kind kind, std::vector<Expr> args) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->args = std::move(args);
  node->hash = node_hash(*node);
  return Expr(std::shared_ptr<const Node>(std::move(node)));
}

Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::number() const { return node_->number; }
const std::string& Expr::name() const { return node_->name; }
const MultiIndex& Expr::index() const { return node_->index; }
int Expr::order() const { return node_->order; }
std::span<const Expr> Expr::args() const { return node_->args; }
std::size_t Expr::hash() const { return node_->hash; }
bool Expr::is_zero() const { return is_number() && number().is_zero(); }
bool Expr::is_one() const { return is_number() && number().is_one(); }
bool Expr::is_integer() const { return is_number() && number().is_integer(); }

Expr Expr::operator-() const { return mul({Expr(-1), *this}); }
Expr& Expr::operator+=(const Expr& o) { return *this = add({*this, o}); }
Expr& Expr::operator-=(const Expr& o) { return *this = add({*this, -o}); }
Expr& Expr::operator*=(const Expr& o) { return *this = mul({*this, o}); }
Expr& Expr::operator/=(const Expr& o) { return *this = mul({*this, pow(o, Expr(-1))}); }

Expr operator+(const Expr& a, const Expr& b) { return add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return add({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return mul({a, b}); }
Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  return mul({a, pow(b, Expr(-1))});
}

std::pair<Expr, Expr> as_power(const Expr& e) {
  if (e.is(Kind::Pow)) return {e.arg(0), e.arg(1)};
  return {e, one_expr()};
}

std::strong_ordering compare(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return std::strong_ordering::equal;
  if (a.is(Kind::Pow) || b.is(Kind::Pow)) {
    auto [ba, ea] = as_power(a);
    auto [bb, eb] = as_power(b);
    if (auto c = compare(ba, bb); c != 0) return c;
    return compare(ea, eb);
  }
  if (a.kind() != b.kind()) return a.kind() <=> b.kind();
  switch (a.kind()) {
    case Kind::Number:
      return a.number() <=> b.number();
    case Kind::Symbol:
      return a.name() <=> b.name();
    case Kind::Jet:
      if (auto c = a.name() <=> b.name(); c != 0) return c;
      if (auto c = a.order() <=> b.order(); c != 0) return c;
      return a.index() <=> b.index();
    case Kind::Func:
      if (auto c = a.name() <=> b.name(); c != 0) return c;
      if (auto c = a.order() <=> b.order(); c != 0) return c;
      break;
    default:
      break;
  }
  const auto aa = a.args();
  const auto bb = b.args();
  // Compare from the last argument: the leading numeric coefficient of a
  // product should not dominate the ordering of terms.
  const std::size_t n = std::min(aa.size(), bb.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = compare(aa[aa.size() - 1 - i], bb[bb.size() - 1 - i]); c != 0) return c;
  }
  return aa.size() <=> bb.size();
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

std::pair<Rational, Expr> split_coefficient(const Expr& term) {
  if (term.is_number()) return {term.number(), one_expr()};
  if (term.is(Kind::Mul) && term.arg(0).is_number()) {
    if (term.size() == 2) return {term.arg(0).number(), term.arg(1)};
    std::vector<Expr> rest(term.args().begin() + 1, term.args().end());
    return {term.arg(0).number(), Expr::make_raw(Kind::Mul, std::move(rest))};
  }
  return {Rational(1), term};
}

Expr add(std::vector<Expr> terms) {
  Rational constant(0);
  ExprMap<Rational> coeffs;
  std::vector<Expr> stack = std::move(terms);
  while (!stack.empty()) {
    Expr t = std::move(stack.back());
    stack.pop_back();
    if (t.is(Kind::Add)) {
      for (const auto& a : t.args()) stack.push_back(a);
    } else if (t.is_number()) {
      constant += t.number();
    } else {
      auto [c, m] = split_coefficient(t);
      auto [it, inserted] = coeffs.try_emplace(m, c);
      if (!inserted) it->second += c;
    }
  }
  std::vector<Expr> out;
  out.reserve(coeffs.size() + 1);
  if (!constant.is_zero()) out.emplace_back(constant);
  bool nested = false;
  for (auto& [m, c] : coeffs) {
    if (c.is_zero()) continue;
    out.push_back(times_coefficient(c, m));
    nested = nested || out.back().is(Kind::Add);
  }
  if (nested) return add(std::move(out));
  if (out.empty()) return zero_expr();
  if (out.size() == 1) return out.front();
  return Expr::make_raw(Kind::Add, std::move(out));
}

Expr mul(std::vector<Expr> factors) {
  Rational coeff(1);
  ExprMap<PowerGroup> groups;
  std::vector<Expr> exp_args;
  std::vector<Expr> stack = std::move(factors);

  auto insert = [&](const Expr& base, const Expr& exponent) {
    PowerGroup& g = groups[base];
    if (exponent.is_number()) {
      g.numeric += exponent.number();
    } else {
      g.symbolic.push_back(exponent);
    }
  };

  while (!stack.empty()) {
    Expr f = std::move(stack.back());
    stack.pop_back();
    switch (f.kind()) {
      case Kind::Number:
        if (f.number().is_zero()) return zero_expr();
        coeff *= f.number();
        break;
      case Kind::Mul:
        for (const auto& a : f.args()) stack.push_back(a);
        break;
      case Kind::Exp:
        exp_args.push_back(f.arg(0));
        break;
      case Kind::Pow:
      case Kind::Add: {
        auto [base, exponent] = as_power(f);
        if (base.is(Kind::Add)) {
          const Rational lead = leading_coefficient(base);
          const bool integral = exponent.is_integer();
          if (!lead.is_one() && (integral || lead.sign() > 0)) {
            insert(Expr(lead), exponent);
            insert(scale_sum(base, Rational(1) / lead), exponent);
            break;
          }
        }
        insert(base, exponent);
        break;
      }
      default:
        insert(f, one_expr());
        break;
    }
  }

  std::vector<Expr> out;
  out.reserve(groups.size() + 1);
  for (auto& [base, g] : groups) {
    Expr exponent;
    if (g.symbolic.empty()) {
      if (g.numeric.is_zero()) continue;
      if (base.is_number()) {
        emit_number_power(base.number(), g.numeric, coeff, out);
        continue;
      }
      exponent = Expr(g.numeric);
    } else if (g.symbolic.size() == 1 && g.numeric.is_zero()) {
      exponent = g.symbolic.front();
    } else {
      std::vector<Expr> parts = std::move(g.symbolic);
      parts.emplace_back(g.numeric);
      exponent = canonical_rational(add(std::move(parts)));
      if (exponent.is_number()) {
        if (exponent.is_zero()) continue;
        if (base.is_number()) {
          emit_number_power(base.number(), exponent.number(), coeff, out);
          continue;
        }
      }
    }
    if (base.is_number() && base.number().is_one()) continue;
    if (exponent.is_one()) {
      out.push_back(base);
    } else {
      out.push_back(Expr::make_raw(Kind::Pow, {base, exponent}));
    }
  }
  if (exp_args.size() == 1) {
    out.push_back(Expr::make_raw(Kind::Exp, {exp_args.front()}));
  } else if (!exp_args.empty()) {
    Expr e = exp(add(std::move(exp_args)));
    if (e.is_number()) {
      coeff *= e.number();
    } else if (e.is(Kind::Mul)) {
      return mul({Expr(coeff), mul(std::move(out)), e});
    } else {
      out.push_back(e);
    }
  }
  if (coeff.is_zero()) return zero_expr();
  std::sort(out.begin(), out.end(), ExprLess{});
  if (out.empty()) return Expr(coeff);
  if (out.size() == 1 && coeff.is_one()) return out.front();
  if (!coeff.is_one()) out.insert(out.begin(), Expr(coeff));
  return Expr::make_raw(Kind::Mul, std::move(out));
}

Expr pow(const Expr& base, const Expr& exponent_in) {
  Expr exponent = exponent_in;
  if (!exponent.is_number()) {
    exponent = canonical_rational(exponent);
  }
  if (exponent.is_number()) {
    const Rational& r = exponent.number();
    if (r.is_zero()) return one_expr();
    if (r.is_one()) return base;
    if (base.is_number()) {
      if (base.number().is_zero()) {
        if (r.sign() < 0) throw std::domain_error("division by zero");
        return zero_expr();
      }
      Rational coeff(1);
      std::vector<Expr> out;
      emit_number_power(base.number(), r, coeff, out);
      out.emplace_back(coeff);
      return mul(std::move(out));
    }
  } else if (base.is_number()) {
    if (base.number().is_zero() || base.number().is_one()) return base;
    if (base.number().sign() < 0) return Expr::make_raw(Kind::Pow, {base, exponent});
  }
  switch (base.kind()) {
    case Kind::Pow:
      return pow(base.arg(0), mul({base.arg(1), exponent}));
    case Kind::Exp:
      return exp(mul({base.arg(0), exponent}));
    case Kind::Mul: {
      const bool integral = exponent.is_integer();
      const bool positive_coeff = !base.arg(0).is_number() || base.arg(0).number().sign() > 0;
      if (integral || positive_coeff) {
        std::vector<Expr> parts;
        parts.reserve(base.size());
        for (const auto& f : base.args()) parts.push_back(pow(f, exponent));
        return mul(std::move(parts));
      }
      return Expr::make_raw(Kind::Pow, {base, exponent});
    }
    default:
      return mul({Expr::make_raw(Kind::Pow, {base, exponent})});
  }
}

Expr sqrt(const Expr& arg) { return pow(arg, Expr(Rational(1, 2))); }

Expr exp(const Expr& arg_in) {
  Expr arg = expand(arg_in);
  if (arg.is_zero()) return one_expr();
  if (arg.is(Kind::Log)) return arg.arg(0);
  std::vector<Expr> terms;
  if (arg.is(Kind::Add)) {
    terms.assign(arg.args().begin(), arg.args().end());
  } else {
    terms.push_back(arg);
  }
  std::vector<Expr> rest;
  std::vector<Expr> powers;
  for (const auto& term : terms) {
    const Expr* log_factor = nullptr;
    if (term.is(Kind::Log)) {
      log_factor = &term;
    } else if (term.is(Kind::Mul)) {
      int count = 0;
      for (const auto& f : term.args()) {
        if (f.is(Kind::Log)) {
          log_factor = &f;
          ++count;
        }
      }
      if (count != 1) log_factor = nullptr;
    }
    if (log_factor == nullptr) {
      rest.push_back(term);
      continue;
    }
    std::vector<Expr> others;
    if (term.is(Kind::Mul)) {
      for (const auto& f : term.args()) {
        if (&f != log_factor) others.push_back(f);
      }
    }
    powers.push_back(pow(log_factor->arg(0), mul(std::move(others))));
  }
  if (powers.empty()) return Expr::make_raw(Kind::Exp, {arg});
  Expr remaining = add(std::move(rest));
  if (!remaining.is_zero()) powers.push_back(Expr::make_raw(Kind::Exp, {remaining}));
  return mul(std::move(powers));
}

Expr log(const Expr& arg) {
  switch (arg.kind()) {
    case Kind::Number:
      if (arg.number().is_one()) return zero_expr();
      if (arg.number().is_zero()) throw std::domain_error("logarithm of zero");
      return Expr::make_raw(Kind::Log, {arg});
    case Kind::Exp:
      return arg.arg(0);
    case Kind::Pow:
      return mul({arg.arg(1), log(arg.arg(0))});
    case Kind::Mul: {
      if (arg.arg(0).is_number() && arg.arg(0).number().sign() < 0) {
        return Expr::make_raw(Kind::Log, {arg});
      }
      std::vector<Expr> parts;
      for (const auto& f : arg.args()) parts.push_back(log(f));
      return add(std::move(parts));
    }
    default:
      return Expr::make_raw(Kind::Log, {arg});
  }
}

Expr rebuild(const Expr& e, std::vector<Expr> args) {
  switch (e.kind()) {
    case Kind::Number:
    case Kind::Symbol:
    case Kind::Jet:
      return e;
    case Kind::Func:
      return Expr::func(e.name(), e.order(), std::move(args.at(0)));
    case Kind::Exp:
      return exp(args.at(0));
    case Kind::Log:
      return log(args.at(0));
    case Kind::Pow:
      return pow(args.at(0), args.at(1));
    case Kind::Mul:
      return mul(std::move(args));
    case Kind::Add:
      return add(std::move(args));
  }
  return e;
}

}  // namespace liesym
