#pragma once

#include <cstdint>

#include "nonalter/quad_core.hpp"

namespace nonalter {

struct Tolerances {
  /// Relative PSD tolerance for every semidefiniteness decision.
  double psd = kDefaultPsdTol;
  /// Relative tolerance for feasibility, complementarity and value checks.
  double residual = 1e-7;
};

/// Budget for witness searches: a deterministic grid (only for dim <= grid_max_dim),
/// seeded uniform samples in [lo, hi]^n, then a short local refinement.
struct SearchSpec {
  double lo = -10.0;
  double hi = 10.0;
  int grid_per_axis = 41;
  int grid_max_dim = 3;
  int samples = 10000;
  int refine_steps = 100;
  std::uint64_t seed = 0;
};

}  // namespace nonalter
