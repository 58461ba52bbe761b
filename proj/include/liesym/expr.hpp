#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "liesym/rational.hpp"

namespace liesym {

/// Node kinds. The declaration order is also the sort order used for
/// canonical argument ordering.
enum class Kind : unsigned char { Number, Symbol, Jet, Func, Exp, Log, Pow, Mul, Add };

/// Multiset of independent-variable names, kept sorted. `{"t","x"}` is the
/// mixed second derivative with respect to t and x.
using MultiIndex = std::vector<std::string>;

MultiIndex make_index(std::vector<std::string> vars);
MultiIndex extend_index(const MultiIndex& index, const std::string& var);
std::string index_string(const MultiIndex& index);

struct Node;

/// Immutable expression handle. Every construction goes through the
/// canonicalizing builders below, so two structurally equal expressions are
/// the same mathematical object in normal form.
class Expr {
 public:
  Expr();  // the number 0
  Expr(long n);  // NOLINT(google-explicit-constructor)
  Expr(const Rational& r);  // NOLINT(google-explicit-constructor)

  static Expr symbol(std::string name);
  /// Jet coordinate `dep_J`; an empty index is the dependent variable itself.
  static Expr jet(std::string dep, MultiIndex index);
  /// Abstract function of one argument; `order` counts derivatives.
  static Expr func(std::string name, int order, Expr arg);

  Kind kind() const;
  const Rational& number() const;      // Number
  const std::string& name() const;     // Symbol name, Jet dependent, Func name
  const MultiIndex& index() const;     // Jet
  int order() const;                   // Func derivative order, Jet order
  std::span<const Expr> args() const;  // Func/Exp/Log: [arg]; Pow: [base, exp]
  const Expr& arg(std::size_t i) const { return args()[i]; }
  std::size_t size() const { return args().size(); }
  std::size_t hash() const;

  bool is(Kind k) const { return kind() == k; }
  bool is_number() const { return kind() == Kind::Number; }
  bool is_zero() const;
  bool is_one() const;
  bool is_integer() const;
  bool same_node(const Expr& o) const { return node_ == o.node_; }

  Expr operator-() const;
  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);
  Expr& operator/=(const Expr& o);

  /// Raw node construction without canonicalization. Used by the builders.
  static Expr make_raw(Kind kind, std::vector<Expr> args);

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
  friend struct Node;
};

struct Node {
  Kind kind{Kind::Number};
  Rational number;
  std::string name;
  MultiIndex index;
  int order = 0;
  std::vector<Expr> args;
  std::size_t hash = 0;
};

/// Total structural order. Powers sort by (base, exponent) so that u, u^2 and
/// u^K stay adjacent.
std::strong_ordering compare(const Expr& a, const Expr& b);
bool operator==(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};
struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

template <typename V>
using ExprMap = std::map<Expr, V, ExprLess>;

Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr pow(const Expr& base, const Expr& exponent);
Expr exp(const Expr& arg);
Expr log(const Expr& arg);
Expr sqrt(const Expr& arg);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);

/// Splits a term into numeric coefficient and the remaining monomial.
std::pair<Rational, Expr> split_coefficient(const Expr& term);
/// Splits into (base, exponent); exponent 1 for non-powers.
std::pair<Expr, Expr> as_power(const Expr& e);

/// Rebuilds `e` through the canonical builders using new arguments.
Expr rebuild(const Expr& e, std::vector<Expr> args);

}  // namespace liesym
