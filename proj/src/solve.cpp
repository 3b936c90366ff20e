#include "nonalter/solve.hpp"

#include <cmath>
#include <sstream>

namespace nonalter {

const char* to_string(Side s) noexcept {
  switch (s) {
    case Side::GNegHPos: return "G_neg_H_pos";
    case Side::GPosHNeg: return "G_pos_H_neg";
    case Side::Other: return "Other";
  }
  return "?";
}

const char* to_string(Pathway p) noexcept {
  switch (p) {
    case Pathway::Infeasible: return "Infeasible";
    case Pathway::Qp1qcReduction: return "Qp1qcReduction";
    case Pathway::AffinePairReduction: return "AffinePairReduction";
    case Pathway::Assumption5Split: return "Assumption5Split";
    case Pathway::DualBranchA: return "DualBranchA";
    case Pathway::DualBranchB: return "DualBranchB";
    case Pathway::DualBranchBMirrored: return "DualBranchBMirrored";
    case Pathway::DualUnattained: return "DualUnattained";
    case Pathway::DualUnbounded: return "DualUnbounded";
    case Pathway::OracleOnly: return "OracleOnly";
    case Pathway::Undetermined: return "Undetermined";
  }
  return "?";
}

const char* to_string(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::Solved: return "Solved";
    case SolveStatus::Unattained: return "Unattained";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::Estimated: return "Estimated";
    case SolveStatus::Undetermined: return "Undetermined";
  }
  return "?";
}

namespace {

double constraint_tol(const QuadForm& q, const Vector& x, const Tolerances& tol) {
  return tol.residual * (1.0 + q.coeff_scale() * (1.0 + x.squaredNorm()));
}

double value_tol(double v, const Tolerances& tol) { return tol.residual * (1.0 + std::abs(v)); }

Side side_of(double gv, double hv) {
  if (gv < 0.0 && hv > 0.0) return Side::GNegHPos;
  if (gv > 0.0 && hv < 0.0) return Side::GPosHNeg;
  return Side::Other;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

bool verify_point(const QuadForm& f, const QuadForm& g, const QuadForm& h, const Vector& x, double nu_star,
                  const Tolerances& tol, Residuals* out) {
  Residuals r{f(x) - nu_star, g(x), h(x)};
  if (out) *out = r;
  return r.g <= constraint_tol(g, x, tol) && r.h <= constraint_tol(h, x, tol) &&
         std::abs(r.objective_gap) <= value_tol(nu_star, tol) * (1.0 + f.coeff_scale());
}

SublevelSide side_of_sublevel(const QuadForm& f, double gamma, const QuadForm& g, const QuadForm& h) {
  const UnconstrainedMin um = unconstrained_min(f);
  std::optional<Vector> x0;
  if (um.minimizer && um.value < gamma && f(*um.minimizer) < gamma) x0 = *um.minimizer;
  if (!x0 && um.descent) {
    const Vector d = um.descent->normalized();
    const Vector base = um.minimizer ? *um.minimizer : Vector::Zero(f.dim());
    for (double t = 1.0; t < 1e12; t *= 2.0) {
      const Vector x = base + t * d;
      if (f(x) < gamma) {
        x0 = x;
        break;
      }
    }
  }
  if (!x0) throw Error(ErrorCode::NoSublevelPoint, "side_of_sublevel: {f < gamma} appears empty");
  return SublevelSide{side_of(g(*x0), h(*x0)), *x0};
}

Recovery recover_solution(const QuadForm& f, const QuadForm& g, const QuadForm& h, double nu_star,
                          const Tolerances& tol) {
  if (!std::isfinite(nu_star)) throw Error(ErrorCode::InvalidArgument, "recover_solution: nu_star must be finite");
  Recovery out;
  const UnconstrainedMin um = unconstrained_min(f, tol.psd);
  const bool branch_a = um.minimizer && std::abs(nu_star - um.value) <= value_tol(nu_star, tol);
  if (branch_a) {
    out.pathway = Pathway::DualBranchA;
    const Vector& x0 = *um.minimizer;
    const Matrix& Z = um.kernel;
    out.trace.push_back("branch A: optimal value equals the unconstrained minimum of f");
    if (Z.cols() == 0) {
      out.trace.push_back("unique unconstrained minimizer");
      if (verify_point(f, g, h, x0, nu_star, tol)) out.x = x0;
    } else {
      const QuadForm gb = restrict_affine(g, x0, Z);
      const QuadForm hb = restrict_affine(h, x0, Z);
      const Qp1qcResult r = solve_qp1qc(gb, hb, tol);
      out.trace.push_back("minimizer manifold of dimension " + std::to_string(Z.cols()) +
                          "; inf{g : h <= 0} on it: " + to_string(r.status) + " " + fmt(r.value));
      if (r.x && r.value <= constraint_tol(g, x0, tol)) {
        const Vector x = x0 + Z * *r.x;
        if (verify_point(f, g, h, x, nu_star, tol)) out.x = x;
      }
    }
  } else {
    const SublevelSide s = side_of_sublevel(f, nu_star, g, h);
    out.side = s.side;
    out.trace.push_back(std::string("branch B: sublevel side ") + to_string(s.side));
    auto attempt = [&](const QuadForm& active, const QuadForm& other, Pathway p) {
      const Qp1qcResult r = solve_qp1qc(f, active, tol);
      out.trace.push_back(std::string(p == Pathway::DualBranchB ? "min{f : h <= 0}: " : "min{f : g <= 0}: ") +
                          to_string(r.status) + " " + fmt(r.value));
      if (!r.x) return false;
      const Vector& x = *r.x;
      const bool on_boundary = std::abs(active(x)) <= constraint_tol(active, x, tol);
      if (on_boundary && other(x) <= constraint_tol(other, x, tol) && verify_point(f, g, h, x, nu_star, tol)) {
        out.x = x;
        out.pathway = p;
        return true;
      }
      return false;
    };
    bool done = false;
    if (s.side != Side::GPosHNeg) done = attempt(h, g, Pathway::DualBranchB);
    if (!done && s.side != Side::GNegHPos) {
      if (s.side == Side::GPosHNeg) out.trace.push_back("mirrored case: roles of g and h exchanged");
      done = attempt(g, h, Pathway::DualBranchBMirrored);
    }
    if (!done) out.pathway = Pathway::DualUnattained;
  }
  if (!out.x) {
    out.pathway = Pathway::DualUnattained;
    out.trace.push_back("verification failed; no optimal point reported");
  }
  return out;
}

namespace {

void solve_reduction(const QuadForm& f, const QuadForm& g, const QuadForm& h, const ReducedProblem& red,
                     const SolveOptions& opt, SolveReport& rep) {
  bool any_feasible = false;
  bool unbounded = false;
  bool best_attained = false;
  double best = kInf;
  std::optional<Vector> best_x;
  for (const ReducedPiece& piece : red.pieces) {
    Qp1qcResult r;
    if (piece.basis.cols() == 0) {
      const bool feasible = !piece.constraint || (*piece.constraint)(Vector::Zero(0)) <= 0.0;
      r.status = feasible ? Qp1qcStatus::Attained : Qp1qcStatus::Infeasible;
      r.value = feasible ? f(piece.origin) : kInf;
      if (feasible) r.x = Vector::Zero(0);
    } else {
      const QuadForm fb = restrict_affine(f, piece.origin, piece.basis);
      r = piece.constraint ? solve_qp1qc(fb, *piece.constraint, opt.tol)
                           : solve_on_affine_subspace(fb, Vector::Zero(piece.basis.cols()),
                                                      Matrix::Identity(piece.basis.cols(), piece.basis.cols()),
                                                      opt.tol);
    }
    rep.trace.push_back("piece '" + piece.label + "': " + to_string(r.status) + " " + fmt(r.value));
    if (r.status == Qp1qcStatus::Infeasible) continue;
    any_feasible = true;
    if (r.status == Qp1qcStatus::UnboundedBelow) {
      unbounded = true;
      continue;
    }
    if (r.value < best || (r.value == best && r.x && !best_attained)) {
      best = r.value;
      best_attained = r.x.has_value();
      best_x = r.x ? std::optional<Vector>(piece.origin + piece.basis * *r.x) : std::nullopt;
    }
  }
  if (!any_feasible) {
    rep.status = SolveStatus::Infeasible;
    rep.nu_star = kInf;
    return;
  }
  if (unbounded) {
    rep.status = SolveStatus::Unbounded;
    rep.nu_star = -kInf;
    return;
  }
  rep.nu_star = best;
  rep.status = SolveStatus::Unattained;
  if (best_x) {
    Residuals res;
    if (verify_point(f, g, h, *best_x, best, opt.tol, &res)) {
      rep.x_star = best_x;
      rep.residuals = res;
      rep.status = SolveStatus::Solved;
    } else {
      rep.trace.push_back("mapped-back point failed verification against the original constraints");
    }
  }
}

GridSpec default_grid(const SolveOptions& opt, Eigen::Index n) {
  if (opt.oracle_grid.lo.size() == n) return opt.oracle_grid;
  return GridSpec::cube(n, -10.0, 10.0, n == 1 ? 2001 : (n == 2 ? 401 : 61), opt.oracle_grid.eps);
}

}  // namespace

SolveReport solve_nonalter(const QuadForm& f, const QuadForm& g, const QuadForm& h, const SolveOptions& opt) {
  if (f.dim() != g.dim() || f.dim() != h.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "solve_nonalter: inconsistent dimensions");
  }
  SolveReport rep;
  rep.classification = classify_problem(g, h, opt.classify);
  const OverallClass cls = rep.classification.overall;
  rep.trace.push_back(std::string("class: ") + to_string(cls));

  switch (cls) {
    case OverallClass::Infeasible:
      rep.pathway = Pathway::Infeasible;
      rep.status = SolveStatus::Infeasible;
      rep.nu_star = kInf;
      rep.certified = true;
      return rep;
    case OverallClass::ReducesToQP1QC:
    case OverallClass::AffinePairReduction:
    case OverallClass::Assumption5Degenerate: {
      rep.pathway = cls == OverallClass::ReducesToQP1QC       ? Pathway::Qp1qcReduction
                    : cls == OverallClass::AffinePairReduction ? Pathway::AffinePairReduction
                                                               : Pathway::Assumption5Split;
      if (!rep.classification.reduction) {
        rep.status = SolveStatus::Undetermined;
        rep.trace.push_back("no reduction available");
        return rep;
      }
      rep.trace.push_back("reduction: " + rep.classification.reduction->description);
      solve_reduction(f, g, h, *rep.classification.reduction, opt, rep);
      rep.certified = true;
      return rep;
    }
    case OverallClass::NonAlter: {
      DualOptions dopt = opt.dual;
      const DualSolveResult dual = solve_dual_2d(f, g, h, dopt);
      rep.dual = dual;
      if (dual.status == DualStatus::NumericalFailure) {
        throw Error(ErrorCode::NumericalFailure, "solve_nonalter: dual maximization did not converge: " + dual.note);
      }
      rep.certified = true;
      if (dual.status == DualStatus::DualInfeasibleEverywhere) {
        rep.pathway = Pathway::DualUnbounded;
        rep.status = SolveStatus::Unbounded;
        rep.nu_star = -kInf;
        if (f.dim() <= kOracleMaxDim) {
          const UnboundedProbe probe = probe_unbounded(f, g, h, default_grid(opt, f.dim()));
          rep.trace.push_back(std::string("oracle unboundedness probe: ") + (probe.suspected ? "confirmed" : "inconclusive"));
        }
        return rep;
      }
      rep.nu_star = dual.value;
      rep.trace.push_back("dual value " + fmt(dual.value));
      const Recovery rec = recover_solution(f, g, h, dual.value, opt.tol);
      rep.pathway = rec.pathway;
      rep.side = rec.side;
      rep.trace.insert(rep.trace.end(), rec.trace.begin(), rec.trace.end());
      if (rec.x) {
        Residuals res;
        verify_point(f, g, h, *rec.x, rep.nu_star, opt.tol, &res);
        rep.x_star = rec.x;
        rep.residuals = res;
        rep.status = SolveStatus::Solved;
      } else {
        rep.status = SolveStatus::Unattained;
      }
      return rep;
    }
    case OverallClass::OutsideNonAlter:
    case OverallClass::Undetermined: {
      rep.pathway = cls == OverallClass::OutsideNonAlter ? Pathway::OracleOnly : Pathway::Undetermined;
      rep.status = cls == OverallClass::OutsideNonAlter ? SolveStatus::Estimated : SolveStatus::Undetermined;
      rep.certified = false;
      DualOptions dopt = opt.dual;
      const DualSolveResult dual = solve_dual_2d(f, g, h, dopt);
      if (dual.status != DualStatus::NumericalFailure) {
        rep.dual = dual;
        rep.trace.push_back("dual lower bound " + fmt(dual.value));
      }
      if (f.dim() <= kOracleMaxDim) {
        const OracleResult o = grid_min(f, g, h, default_grid(opt, f.dim()));
        rep.oracle = o;
        rep.nu_star = o.min_value;
        rep.trace.push_back("grid oracle estimate " + fmt(o.min_value) + " over " +
                            std::to_string(o.feasible_count) + " feasible points");
      } else {
        rep.nu_star = rep.dual ? rep.dual->value : kInf;
        rep.trace.push_back("no oracle above dimension 3; value is the dual lower bound");
      }
      return rep;
    }
  }
  return rep;
}

}  // namespace nonalter
