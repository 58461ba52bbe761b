#include <iostream>

#include "liesym/acceptance.hpp"

int main() {
  liesym::AcceptanceOptions options;
  options.zero.samples = 16;
  options.zero.tolerance = 1e-9;
  options.zero.seed = 20240611;
  options.trials = 200;
  options.instances = 200;
  options.fd_tolerance = 1e-6;

  const auto results = liesym::run_acceptance(options);
  std::cout << liesym::scorecard(results, true);
  bool passed = true;
  for (const auto& r : results) passed = passed && r.passed;
  return passed ? 0 : 1;
}
