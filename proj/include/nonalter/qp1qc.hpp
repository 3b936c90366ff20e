#pragma once

// min { f(x) : g(x) <= 0 } for quadratics f, g, solved through its
// one-multiplier Lagrangian dual and a primal recovery step.

#include <optional>
#include <string>

#include "nonalter/options.hpp"
#include "nonalter/quad_core.hpp"

namespace nonalter {

enum class Qp1qcStatus { Attained, Unattained, UnboundedBelow, Infeasible };

const char* to_string(Qp1qcStatus s) noexcept;

struct KktResiduals {
  double stationarity = 0.0;
  double complementarity = 0.0;
  /// g(x*); nonpositive means feasible.
  double feasibility = 0.0;
};

struct Qp1qcResult {
  Qp1qcStatus status = Qp1qcStatus::Unattained;
  double value = kInf;
  std::optional<Vector> x;
  double lambda = 0.0;
  KktResiduals kkt;
  std::string note;
  int evaluations = 0;
};

Qp1qcResult solve_qp1qc(const QuadForm& f, const QuadForm& g, const Tolerances& tol = {});

/// Unconstrained minimum of y -> f(x0 + N y), reported in x coordinates.
Qp1qcResult solve_on_affine_subspace(const QuadForm& f, const Vector& x0, const Matrix& N,
                                     const Tolerances& tol = {});

}  // namespace nonalter
