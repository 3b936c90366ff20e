#pragma once

// Brute-force ground truth for dimensions up to three: grid minimization,
// sign-pattern witness search and an empirical check of the implication
// g <= 0, h <= 0 => f >= gamma.

#include <cstdint>
#include <optional>
#include <vector>

#include "nonalter/quad_core.hpp"

namespace nonalter {

inline constexpr int kOracleMaxDim = 3;

struct GridSpec {
  Vector lo;
  Vector hi;
  int resolution = 401;
  /// Feasibility slack: a grid point is feasible when g <= eps and h <= eps.
  double eps = 1e-6;

  static GridSpec cube(Eigen::Index n, double lo = -10.0, double hi = 10.0, int resolution = 401, double eps = 1e-6);
  Vector spacing() const;
  GridSpec scaled(double factor) const;
};

struct OracleResult {
  /// +inf when no grid point is feasible.
  double min_value = kInf;
  std::optional<Vector> argmin;
  long long feasible_count = 0;
  Vector spacing;
};

/// Minimum of f over feasible grid points; ties go to the lexicographically
/// first point.
OracleResult grid_min(const QuadForm& f, const QuadForm& g, const QuadForm& h, const GridSpec& spec);

/// Bound on how far the grid minimum can sit above the true minimum near the
/// argmin: local Lipschitz constant of f times the cell diagonal.
double spacing_bound(const QuadForm& f, const OracleResult& r);

enum class SignKind { Strict, Weak };

struct SignPattern {
  SignKind g = SignKind::Strict;
  SignKind h = SignKind::Strict;
};

struct WitnessOptions {
  /// Strict means value > margin; weak means value >= -margin.
  double margin = 1e-6;
  long long samples = 100000;
  std::uint64_t seed = 0;
};

/// A grid or sample point satisfying the sign pattern, if any.
std::optional<Vector> find_witness(const QuadForm& g, const QuadForm& h, SignPattern pattern, const GridSpec& spec,
                                   const WitnessOptions& opt = {});

/// True iff no feasible grid point has f < gamma - tol.
bool s1_empirical(const QuadForm& f, double gamma, const QuadForm& g, const QuadForm& h, const GridSpec& spec,
                  double tol = 1e-8);

struct UnboundedProbe {
  bool suspected = false;
  double value_box = kInf;
  double value_enlarged = kInf;
  std::optional<Vector> point;
};

/// Compares the grid minimum on the box with the one on the box enlarged
/// eightfold; a strictly lower minimum on the enlarged boundary, with f still
/// decreasing outward, flags the problem as unbounded below.
UnboundedProbe probe_unbounded(const QuadForm& f, const QuadForm& g, const QuadForm& h, const GridSpec& spec);

/// Grid points with f < gamma, ignoring the constraints.
std::vector<Vector> objective_sublevel_points(const QuadForm& f, double gamma, const GridSpec& spec,
                                              std::size_t max_points = 100000);

}  // namespace nonalter
