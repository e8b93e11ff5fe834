#pragma once

#include <cstdint>

#include "nmlab/measures.hpp"

// Brute-force reference for D_T: Nelder-Mead over the Cholesky-style
// parameterization A = B B^dag (B lower triangular, real diagonal) with
// random restarts.  Independent of the projected-subgradient path; used to
// certify optimizer soundness.

namespace nmlab {

struct OracleConfig {
  int restarts = 1000;
  int max_evals = 400;      // per restart
  double radius = 2.0;      // restart sampling scale, times ||K||_1
  int polish_rounds = 14;   // shrinking-simplex refinements of the incumbent
  std::uint64_t seed = 0;
};

double dt_oracle(const ChoiDerivative& k, const OracleConfig& cfg = {});

}  // namespace nmlab
