#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "l1l2prox/core.hpp"

namespace l1l2 {

// Budget for the brute-force minimizers.  n_starts random restarts are
// spread round-robin across the enumerated support patterns; every pattern
// additionally gets one deterministic start aligned with y.
struct OracleConfig {
  int n_starts = 100;
  int max_iter = 200;
  double step_tol = 1e-12;
  std::uint64_t seed = 0;
};

struct OracleResult {
  std::vector<double> x;
  double q = 0.0;
};

// Projected-gradient search for min Q over every nonempty support pattern
// (all 2^n - 1 of them fit the budget for n <= 8), plus x = 0.  Throws
// Error for n > 8.  Upper-bounds the true minimum; with the default budget
// the gap is far below 1e-6 in practice.
OracleResult oracle_prox(const ProxProblem& p, const OracleConfig& cfg);

// Minimum of -0.5*<yk, u>^2 + mu*||u||_1 over the unit sphere, by dense
// sampling plus local descent.  Requires 1 <= k <= 8.
double oracle_sphere_min(std::span<const double> yk, double mu, const OracleConfig& cfg);

}  // namespace l1l2
