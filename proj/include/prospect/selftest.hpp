#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prospect/perspective.hpp"

namespace prospect {

struct SelftestReport {
  std::string suite;
  long draws = 0;
  double max_violation = 0.0;
  bool pass = false;
  std::string worst_input;  // serialized (gamma, eta, y) of the worst draw
};

// Property suites over randomized prox instances:
//  - firm nonexpansiveness per kind, threshold 1e-10
//  - threshold-gate equivalence (independently coded conjugates), exact
//  - positive homogeneity prox_{l*gamma}(l*eta, l*y) = l*prox_gamma(eta, y)
//    for l in {0.5, 2, 10}, relative threshold 1e-9
//  - Moreau/projection identity on scalar Huber and Vapnik against a
//    numerically projected support set, threshold 1e-6
std::vector<SelftestReport> run_prox_selftest(long draws_per_kind,
                                              std::uint64_t seed);

}  // namespace prospect
