#pragma once

// Lagrangian dual of min { f : g <= 0, h <= 0 } and its maximization over the
// two nonnegative multipliers.

#include <string>
#include <vector>

#include "nonalter/options.hpp"
#include "nonalter/quad_core.hpp"

namespace nonalter {

/// inf_x f + l1 g + l2 h in closed form; -inf when the combined Hessian is not
/// PSD or the linear part leaves its range.
double lagrangian_dual_value(const QuadForm& f, const QuadForm& g, const QuadForm& h, double l1, double l2,
                             double psd_tol = kDefaultPsdTol);

struct DualPoint {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gamma = -kInf;
  /// Minimum eigenvalue of Z = M(f) - gamma E00 + l1 M(g) + l2 M(h).
  double slack_min_eig = 0.0;
};

/// The slack matrix Z for a multiplier triple.
Matrix slack_matrix(const QuadForm& f, const QuadForm& g, const QuadForm& h, double gamma, double l1, double l2);

struct SdpCertificate {
  double min_eig = 0.0;
  double norm = 0.0;
  /// min_eig >= -tol (1 + |Z|_2).
  bool feasible = false;
};

SdpCertificate sdp_certificate(const QuadForm& f, const QuadForm& g, const QuadForm& h, const DualPoint& p,
                               double psd_tol = kDefaultPsdTol);

enum class DualStatus { Finite, DualInfeasibleEverywhere, NumericalFailure };

const char* to_string(DualStatus s) noexcept;

struct DualTraceEntry {
  std::string phase;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double value = -kInf;
};

struct DualSolveResult {
  DualStatus status = DualStatus::DualInfeasibleEverywhere;
  double value = -kInf;
  DualPoint best;
  int evaluations = 0;
  std::vector<DualTraceEntry> trace;
  std::string note;
};

struct DualOptions {
  Tolerances tol;
  int grid = 64;
  int simplex_iterations = 200;
  int budget = 100000;
  bool record_trace = false;
};

DualSolveResult solve_dual_2d(const QuadForm& f, const QuadForm& g, const QuadForm& h, const DualOptions& opt = {});

}  // namespace nonalter
