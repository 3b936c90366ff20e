#pragma once

// Arrangement of the two constraint functions: zero-set inclusions, hyperplane
// separation, the five standing assumptions and the resulting problem class.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nonalter/canonical.hpp"
#include "nonalter/options.hpp"
#include "nonalter/quad_core.hpp"

namespace nonalter {

enum class Tri { Holds, Fails, Undetermined };

const char* to_string(Tri t) noexcept;

struct SlaterSides {
  bool takes_negative = false;
  bool takes_positive = false;
};

SlaterSides slater_two_sided(const QuadForm& q, double psd_tol = kDefaultPsdTol);

/// Real lambda with lift(p) + lambda lift(q) PSD, if one exists.
std::optional<double> pencil_psd_search(const QuadForm& p, const QuadForm& q, double psd_tol = kDefaultPsdTol);

struct SeparationCertificate {
  AffineChange change;
  /// (c0, c1, ..., cm) of the companion in the reduced basis, c1 != 0.
  Vector affine_pattern;
  /// PSD status of the lift of g restricted to {h = 0}.
  PsdStatus restriction_nonneg;
  /// Both in {g < 0}, with h of opposite signs.
  Vector witness_minus;
  Vector witness_plus;
};

/// Certificate that the hyperplane {h = 0} splits {g < 0} into two pieces.
std::optional<SeparationCertificate> detect_separation_by_hyperplane(const QuadForm& g, const QuadForm& h,
                                                                     double psd_tol = kDefaultPsdTol);

enum class InclusionStatus { CertifiedPencil, CertifiedVacuous, CertifiedRestriction, RefutedWitness, Undetermined };

const char* to_string(InclusionStatus s) noexcept;

struct InclusionVerdict {
  InclusionStatus status = InclusionStatus::Undetermined;
  double lambda = 0.0;
  std::optional<Vector> witness;
  /// sign * h at the witness.
  double violation = 0.0;
  std::string note;
};

struct ClassifyOptions {
  Tolerances tol;
  SearchSpec search;
};

/// Decides {g = 0} subset {sign * h <= 0}.
InclusionVerdict check_inclusion_zeroset(const QuadForm& g, const QuadForm& h, int sign,
                                         const ClassifyOptions& opt = {});

struct AssumptionVerdict {
  Tri verdict = Tri::Undetermined;
  std::string reason;
  std::optional<Vector> witness;
};

enum class ReductionKind { SingleConstraint, SubspaceRestriction, ProductConstraint, HalfspaceUnionHyperplane,
                           NullspaceSystem };

const char* to_string(ReductionKind k) noexcept;

/// One piece of a reduced feasible set: x = origin + basis y with an optional
/// constraint c(y) <= 0 written in the y coordinates.
struct ReducedPiece {
  Vector origin;
  Matrix basis;
  std::optional<QuadForm> constraint;
  std::string label;
};

/// The feasible set is the union of the pieces.
struct ReducedProblem {
  ReductionKind kind = ReductionKind::SingleConstraint;
  std::vector<ReducedPiece> pieces;
  std::string description;
};

struct Assumption2Result {
  AssumptionVerdict verdict;
  /// {g=0} in {h<=0}, {g=0} in {h>=0}, {h=0} in {g<=0}, {h=0} in {g>=0}.
  std::array<InclusionVerdict, 4> inclusions;
};

Assumption2Result check_assumption2(const QuadForm& g, const QuadForm& h, const ClassifyOptions& opt = {});
AssumptionVerdict check_assumption1(const QuadForm& g, const QuadForm& h, const ClassifyOptions& opt = {});
AssumptionVerdict check_assumption3(const QuadForm& g, const QuadForm& h, const ClassifyOptions& opt = {});
AssumptionVerdict check_assumption4(const QuadForm& g, const QuadForm& h, const ClassifyOptions& opt = {});
AssumptionVerdict check_assumption5(const QuadForm& g, const QuadForm& h, const ClassifyOptions& opt = {});

enum class OverallClass { Infeasible, ReducesToQP1QC, AffinePairReduction, Assumption5Degenerate, NonAlter,
                          OutsideNonAlter, Undetermined };

const char* to_string(OverallClass c) noexcept;

struct ArrangementReport {
  /// Index k-1 holds Assumption k.
  std::array<AssumptionVerdict, 5> assumptions;
  std::array<InclusionVerdict, 4> inclusions;
  OverallClass overall = OverallClass::Undetermined;
  /// Assumptions 1 and 2 together.
  Tri in_non_alter = Tri::Undetermined;
  std::optional<ReducedProblem> reduction;
  std::vector<std::string> notes;
};

ArrangementReport classify_problem(const QuadForm& g, const QuadForm& h, const ClassifyOptions& opt = {});

}  // namespace nonalter
