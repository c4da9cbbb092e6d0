#pragma once

// Classical cross-checks for the Poincare machinery: the weight-8 series
// against E8 = E4^2 (divisor-sum oracle) and the weight-12, nu=1 series
// against Delta up to one scalar.

#include "logvvmf/numeric.hpp"

#include <string>
#include <vector>

namespace logvvmf {

struct ClassicalCheck {
  std::string name;          // "e8" | "delta"
  long N = 0, Nq = 0;
  std::vector<std::string> observed;   // extracted coefficients (or ratios)
  std::vector<std::string> expected;
  Real max_rel_err;
  Real tolerance;
  bool pass = false;
};

// trivial representation, k = 8, nu = 0: extracted a(1), a(2) against
// 480 and 61920, relative tolerance 1e-6
ClassicalCheck classical_check_e8(long N = 200, long Nq = 4, int threads = 1);

// trivial representation, k = 12, nu = 1: coefficient ratios a(n)/a(1)
// against Delta's, relative tolerance 1e-4
ClassicalCheck classical_check_delta(long N = 200, long Nq = 5, int threads = 1);

}  // namespace logvvmf
