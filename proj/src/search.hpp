#pragma once

// Seeded witness searches shared by the classifier and the oracle.

#include <optional>
#include <random>
#include <vector>

#include "nonalter/options.hpp"
#include "nonalter/quad_core.hpp"

namespace nonalter::detail {

/// Seed points: the full grid when dim <= grid_max_dim, then uniform samples.
std::vector<Vector> seed_points(Eigen::Index n, const SearchSpec& spec, std::mt19937_64& rng);

struct ZeroSetHit {
  Vector x;
  double value = -kInf;
};

/// Approximately maximizes phi over {g = 0}: seeds are projected onto the
/// zero set along the gradient of g and along a random direction, and the
/// best few are refined by projected gradient ascent. Empty when no seed line
/// meets the zero set.
std::optional<ZeroSetHit> maximize_on_zero_set(const QuadForm& g, const QuadForm& phi, const SearchSpec& spec);

/// Root of q(x + t d) = 0 with the smallest magnitude.
std::optional<double> nearest_root_along(const QuadForm& q, const Vector& x, const Vector& d);

}  // namespace nonalter::detail
