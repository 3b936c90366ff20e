#pragma once

// End-to-end solver for min { f : g <= 0, h <= 0 }: classify, reduce or solve
// the two-multiplier dual, then recover an optimal point.

#include <optional>
#include <string>
#include <vector>

#include "nonalter/classify.hpp"
#include "nonalter/duality.hpp"
#include "nonalter/oracle.hpp"
#include "nonalter/qp1qc.hpp"

namespace nonalter {

enum class Side { GNegHPos, GPosHNeg, Other };

const char* to_string(Side s) noexcept;

struct SublevelSide {
  Side side = Side::Other;
  Vector x0;
};

/// Side of {f < gamma} relative to g and h, read off a point x0 with
/// f(x0) < gamma. Throws NoSublevelPoint when none is found.
SublevelSide side_of_sublevel(const QuadForm& f, double gamma, const QuadForm& g, const QuadForm& h);

enum class Pathway {
  Infeasible,
  Qp1qcReduction,
  AffinePairReduction,
  Assumption5Split,
  DualBranchA,
  DualBranchB,
  DualBranchBMirrored,
  DualUnattained,
  DualUnbounded,
  OracleOnly,
  Undetermined,
};

const char* to_string(Pathway p) noexcept;

struct Recovery {
  std::optional<Vector> x;
  Pathway pathway = Pathway::DualUnattained;
  std::optional<Side> side;
  std::vector<std::string> trace;
};

/// Optimal point for a finite nu_star, or empty when verification fails.
Recovery recover_solution(const QuadForm& f, const QuadForm& g, const QuadForm& h, double nu_star,
                          const Tolerances& tol = {});

enum class SolveStatus { Solved, Unattained, Infeasible, Unbounded, Estimated, Undetermined };

const char* to_string(SolveStatus s) noexcept;

struct Residuals {
  double objective_gap = 0.0;
  double g = 0.0;
  double h = 0.0;
};

struct SolveOptions {
  Tolerances tol;
  ClassifyOptions classify;
  DualOptions dual;
  /// Grid for oracle estimates and unboundedness probes; empty bounds mean the
  /// default cube [-10, 10]^n.
  GridSpec oracle_grid;
};

struct SolveReport {
  ArrangementReport classification;
  SolveStatus status = SolveStatus::Undetermined;
  double nu_star = kInf;
  std::optional<DualSolveResult> dual;
  std::optional<Vector> x_star;
  std::optional<Side> side;
  std::optional<Residuals> residuals;
  Pathway pathway = Pathway::Undetermined;
  std::vector<std::string> trace;
  /// False when the value rests on the grid oracle alone.
  bool certified = false;
  std::optional<OracleResult> oracle;
};

SolveReport solve_nonalter(const QuadForm& f, const QuadForm& g, const QuadForm& h, const SolveOptions& opt = {});

/// True when x satisfies the report invariants: g, h within tolerance and f
/// within tolerance of nu_star.
bool verify_point(const QuadForm& f, const QuadForm& g, const QuadForm& h, const Vector& x, double nu_star,
                  const Tolerances& tol, Residuals* out = nullptr);

}  // namespace nonalter
