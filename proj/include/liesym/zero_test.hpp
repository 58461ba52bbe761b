#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "liesym/calculus.hpp"
#include "liesym/expr.hpp"

namespace liesym {

struct Assumption {
  Expr expr;
  std::string reason;
};

/// Expressions assumed nonzero (parameter inequalities, branch conditions
/// such as K != 1). Threaded explicitly through every check.
class AssumptionLedger {
 public:
  void assume_nonzero(const Expr& e, std::string reason = {});
  void merge(const AssumptionLedger& other);
  const std::vector<Assumption>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Structural proof that `e` cannot vanish: nonzero numbers, exponentials,
  /// ledger members up to a constant factor, and products/powers of those.
  bool known_nonzero(const Expr& e) const;

 private:
  std::vector<Assumption> entries_;
  std::vector<Expr> normalized_;
};

/// Fixed smooth function used to stand in for an abstract f or g when
/// sampling: c0 + c1 exp(c2 z) + c3 sin(c4 z), with closed-form derivatives.
struct SampleFunction {
  double c0 = 0.0, c1 = 1.0, c2 = 1.0, c3 = 0.0, c4 = 1.0;
  double operator()(int order, double z) const;
};

struct NumericPoint {
  ExprMap<double> leaves;
  std::map<std::string, SampleFunction> functions;
};

/// Double-precision evaluation; returns NaN at singularities or when a leaf
/// has no value.
double evaluate(const Expr& e, const NumericPoint& point);

struct ZeroTestOptions {
  int samples = 16;
  double tolerance = 1e-9;
  std::uint64_t seed = 20240611;
  double low = 0.5;
  double high = 2.5;
  int max_attempts_per_sample = 24;
};

enum class ZeroStatus { IdenticallyZero, Nonzero, Undecided };

std::string to_string(ZeroStatus status);

struct ZeroVerdict {
  ZeroStatus status = ZeroStatus::Undecided;
  /// Numerator left after symbolic normalization (0 when proven zero).
  Expr residual;
  /// Witness point for Nonzero.
  NumericPoint witness;
  double witness_value = 0.0;
  int points_evaluated = 0;
  std::string detail;

  bool zero() const { return status == ZeroStatus::IdenticallyZero; }
};

/// Symbolic normalization first; if it does not close the case, numeric
/// sampling at seeded random points that keep ledger members away from zero.
/// Agreement with zero at every sample is reported as Undecided, never as
/// IdenticallyZero.
ZeroVerdict is_zero(const Expr& e, const AssumptionLedger& ledger = {},
                    const ZeroTestOptions& options = {}, const ExpandOptions& expand = {});

/// Draws a random point for every leaf and abstract function in `exprs`.
NumericPoint random_point(const std::vector<Expr>& exprs, std::uint64_t seed,
                          const ZeroTestOptions& options = {});

}  // namespace liesym
