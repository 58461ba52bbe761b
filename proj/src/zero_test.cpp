#include "liesym/zero_test.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace liesym {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Expr up_to_constant(const Expr& e) {
  return split_coefficient(mul({e})).second;
}

void assign_leaves(const Expr& e, NumericPoint& point, std::mt19937_64& rng,
                   const ZeroTestOptions& options) {
  std::uniform_real_distribution<double> value(options.low, options.high);
  for (const auto& leaf : leaf_atoms(e)) {
    if (!point.leaves.count(leaf)) point.leaves.emplace(leaf, value(rng));
  }
  std::uniform_real_distribution<double> coeff(0.3, 1.3);
  for (const auto& fn : function_atoms(e)) {
    if (!point.functions.count(fn.name())) {
      SampleFunction s{coeff(rng), coeff(rng), coeff(rng) * 0.7, coeff(rng), coeff(rng) + 0.5};
      point.functions.emplace(fn.name(), s);
    }
  }
}

double magnitude(const Expr& e, const NumericPoint& point) {
  double total = 0.0;
  for (const auto& t : terms_of(e)) total += std::abs(evaluate(t, point));
  return total;
}

}  // namespace

void AssumptionLedger::assume_nonzero(const Expr& e, std::string reason) {
  Expr n = up_to_constant(e);
  for (const auto& existing : normalized_) {
    if (existing == n) return;
  }
  entries_.push_back({e, std::move(reason)});
  normalized_.push_back(std::move(n));
}

void AssumptionLedger::merge(const AssumptionLedger& other) {
  for (const auto& a : other.entries_) assume_nonzero(a.expr, a.reason);
}

bool AssumptionLedger::known_nonzero(const Expr& e) const {
  switch (e.kind()) {
    case Kind::Number:
      return !e.number().is_zero();
    case Kind::Exp:
      return true;
    case Kind::Pow:
      if (known_nonzero(e.arg(0))) return true;
      break;
    case Kind::Mul: {
      bool all = true;
      for (const auto& f : e.args()) all = all && known_nonzero(f);
      if (all) return true;
      break;
    }
    default:
      break;
  }
  const Expr n = up_to_constant(e);
  for (const auto& m : normalized_) {
    if (m == n) return true;
  }
  return false;
}

double SampleFunction::operator()(int order, double z) const {
  double value = c1 * std::pow(c2, order) * std::exp(c2 * z) +
                 c3 * std::pow(c4, order) * std::sin(c4 * z + order * M_PI / 2.0);
  if (order == 0) value += c0;
  return value;
}

double evaluate(const Expr& e, const NumericPoint& point) {
  switch (e.kind()) {
    case Kind::Number:
      return e.number().to_double();
    case Kind::Symbol:
    case Kind::Jet: {
      auto it = point.leaves.find(e);
      return it == point.leaves.end() ? kNaN : it->second;
    }
    case Kind::Func: {
      auto it = point.functions.find(e.name());
      if (it == point.functions.end()) return kNaN;
      return it->second(e.order(), evaluate(e.arg(0), point));
    }
    case Kind::Exp:
      return std::exp(evaluate(e.arg(0), point));
    case Kind::Log: {
      const double a = evaluate(e.arg(0), point);
      return a > 0 ? std::log(a) : kNaN;
    }
    case Kind::Pow: {
      const double b = evaluate(e.arg(0), point);
      const Expr& ex = e.arg(1);
      if (ex.is_integer()) {
        if (b == 0.0 && ex.number().sign() < 0) return kNaN;
        return std::pow(b, static_cast<double>(*ex.number().to_long()));
      }
      const double x = evaluate(ex, point);
      if (b < 0 || (b == 0.0 && x <= 0)) return kNaN;
      return std::pow(b, x);
    }
    case Kind::Mul: {
      double p = 1.0;
      for (const auto& f : e.args()) p *= evaluate(f, point);
      return p;
    }
    case Kind::Add: {
      double s = 0.0;
      for (const auto& t : e.args()) s += evaluate(t, point);
      return s;
    }
  }
  return kNaN;
}

std::string to_string(ZeroStatus status) {
  switch (status) {
    case ZeroStatus::IdenticallyZero:
      return "IdenticallyZero";
    case ZeroStatus::Nonzero:
      return "Nonzero";
    case ZeroStatus::Undecided:
      return "Undecided";
  }
  return "Undecided";
}

NumericPoint random_point(const std::vector<Expr>& exprs, std::uint64_t seed,
                          const ZeroTestOptions& options) {
  std::mt19937_64 rng(seed);
  NumericPoint point;
  for (const auto& e : exprs) assign_leaves(e, point, rng, options);
  return point;
}

ZeroVerdict is_zero(const Expr& e, const AssumptionLedger& ledger, const ZeroTestOptions& options,
                    const ExpandOptions& expand_options) {
  ZeroVerdict verdict;
  const Fraction fr = to_fraction(e, expand_options);
  verdict.residual = fr.numerator;
  if (fr.numerator.is_zero()) {
    verdict.status = ZeroStatus::IdenticallyZero;
    verdict.detail = "numerator normalizes to 0";
    return verdict;
  }
  std::mt19937_64 rng(options.seed);
  std::vector<Expr> involved{e};
  for (const auto& a : ledger.entries()) involved.push_back(a.expr);
  const int budget = options.samples * options.max_attempts_per_sample;
  int attempts = 0;
  while (verdict.points_evaluated < options.samples && attempts < budget) {
    ++attempts;
    NumericPoint point;
    for (const auto& x : involved) assign_leaves(x, point, rng, options);
    bool ledger_ok = true;
    for (const auto& a : ledger.entries()) {
      const double v = evaluate(a.expr, point);
      if (!std::isfinite(v) || std::abs(v) < 1e-3) {
        ledger_ok = false;
        break;
      }
    }
    if (!ledger_ok) continue;
    const double value = evaluate(e, point);
    if (!std::isfinite(value)) continue;
    const double scale = std::max(1.0, magnitude(fr.numerator, point));
    const double num_value = evaluate(fr.numerator, point);
    if (!std::isfinite(num_value)) continue;
    ++verdict.points_evaluated;
    if (std::abs(num_value) > options.tolerance * scale) {
      verdict.status = ZeroStatus::Nonzero;
      verdict.witness = std::move(point);
      verdict.witness_value = value;
      verdict.detail = "nonzero at a sample point";
      return verdict;
    }
  }
  verdict.status = ZeroStatus::Undecided;
  verdict.detail = verdict.points_evaluated < options.samples
                       ? "too few regular sample points"
                       : "vanishes numerically but no symbolic proof";
  return verdict;
}

}  // namespace liesym
