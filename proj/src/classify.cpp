#include "nonalter/classify.hpp"

#include <cmath>
#include <random>

#include "line_search.hpp"
#include "nonalter/qp1qc.hpp"
#include "search.hpp"

namespace nonalter {

const char* to_string(Tri t) noexcept {
  switch (t) {
    case Tri::Holds: return "holds";
    case Tri::Fails: return "fails";
    case Tri::Undetermined: return "undetermined";
  }
  return "?";
}

const char* to_string(InclusionStatus s) noexcept {
  switch (s) {
    case InclusionStatus::CertifiedPencil: return "CertifiedPencil";
    case InclusionStatus::CertifiedVacuous: return "CertifiedVacuous";
    case InclusionStatus::CertifiedRestriction: return "CertifiedRestriction";
    case InclusionStatus::RefutedWitness: return "RefutedWitness";
    case InclusionStatus::Undetermined: return "Undetermined";
  }
  return "?";
}

const char* to_string(ReductionKind k) noexcept {
  switch (k) {
    case ReductionKind::SingleConstraint: return "SingleConstraint";
    case ReductionKind::SubspaceRestriction: return "SubspaceRestriction";
    case ReductionKind::ProductConstraint: return "ProductConstraint";
    case ReductionKind::HalfspaceUnionHyperplane: return "HalfspaceUnionHyperplane";
    case ReductionKind::NullspaceSystem: return "NullspaceSystem";
  }
  return "?";
}

const char* to_string(OverallClass c) noexcept {
  switch (c) {
    case OverallClass::Infeasible: return "Infeasible";
    case OverallClass::ReducesToQP1QC: return "ReducesToQP1QC";
    case OverallClass::AffinePairReduction: return "AffinePairReduction";
    case OverallClass::Assumption5Degenerate: return "Assumption5Degenerate";
    case OverallClass::NonAlter: return "NonAlter";
    case OverallClass::OutsideNonAlter: return "OutsideNonAlter";
    case OverallClass::Undetermined: return "Undetermined";
  }
  return "?";
}

namespace {

bool certified(const InclusionVerdict& v) {
  return v.status == InclusionStatus::CertifiedPencil || v.status == InclusionStatus::CertifiedVacuous ||
         v.status == InclusionStatus::CertifiedRestriction;
}
bool refuted(const InclusionVerdict& v) { return v.status == InclusionStatus::RefutedWitness; }

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::Fails || b == Tri::Fails) return Tri::Fails;
  if (a == Tri::Holds && b == Tri::Holds) return Tri::Holds;
  return Tri::Undetermined;
}

Tri tri_or(Tri a, Tri b) {
  if (a == Tri::Holds || b == Tri::Holds) return Tri::Holds;
  if (a == Tri::Fails && b == Tri::Fails) return Tri::Fails;
  return Tri::Undetermined;
}

Tri inclusion_tri(const InclusionVerdict& v) {
  if (certified(v)) return Tri::Holds;
  if (refuted(v)) return Tri::Fails;
  return Tri::Undetermined;
}

double value_tol(const QuadForm& q, const Tolerances& tol) { return tol.residual * (1.0 + q.coeff_scale()); }

ReducedPiece whole_space(Eigen::Index n, std::optional<QuadForm> c, std::string label) {
  return ReducedPiece{Vector::Zero(n), Matrix::Identity(n, n), std::move(c), std::move(label)};
}

ReducedProblem single_constraint(const QuadForm& c, std::string label) {
  ReducedProblem r;
  r.kind = ReductionKind::SingleConstraint;
  r.description = label;
  r.pieces.push_back(whole_space(c.dim(), c, std::move(label)));
  return r;
}

ReducedProblem unconstrained(Eigen::Index n, std::string label) {
  ReducedProblem r;
  r.kind = ReductionKind::SingleConstraint;
  r.description = label;
  r.pieces.push_back(whole_space(n, std::nullopt, std::move(label)));
  return r;
}

// Points of the hyperplane {2 c^T x + c0 = 0}.
ReducedPiece hyperplane_piece(const QuadForm& affine, std::string label) {
  const Vector& c = affine.a();
  ReducedPiece p;
  p.origin = -affine.a0() * c / (2.0 * c.squaredNorm());
  p.basis = null_basis(c * c.transpose());
  p.label = std::move(label);
  return p;
}

struct Detailed {
  AssumptionVerdict v;
  std::optional<ReducedProblem> reduction;
  bool infeasible = false;
  bool degenerate = false;
};

Detailed assumption3(const QuadForm& g, const QuadForm& h, const ClassifyOptions& opt) {
  Detailed out;
  const auto n = g.dim();
  if (g.is_constant() || h.is_constant()) {
    out.v.verdict = Tri::Fails;
    out.v.reason = g.is_constant() && h.is_constant() ? "both constraints are constant"
                   : g.is_constant()                  ? "g is constant"
                                                      : "h is constant";
    const bool g_bad = g.is_constant() && g.a0() > 0.0;
    const bool h_bad = h.is_constant() && h.a0() > 0.0;
    if (g_bad || h_bad) {
      out.infeasible = true;
      out.v.reason += "; a positive constant makes the feasible set empty";
    } else if (g.is_constant() && h.is_constant()) {
      out.reduction = unconstrained(n, "both constraints hold everywhere");
    } else if (g.is_constant()) {
      out.reduction = single_constraint(h, "only h constrains");
    } else {
      out.reduction = single_constraint(g, "only g constrains");
    }
    return out;
  }

  Tri nonempty = Tri::Undetermined;
  const Qp1qcResult in_d = solve_qp1qc(g, h, opt.tol);
  const double vg = value_tol(g, opt.tol);
  if (in_d.status == Qp1qcStatus::Infeasible) {
    nonempty = Tri::Fails;
  } else if (in_d.status == Qp1qcStatus::UnboundedBelow || in_d.value < -vg) {
    nonempty = Tri::Holds;
    out.v.witness = in_d.x;
  } else if (in_d.status == Qp1qcStatus::Attained) {
    nonempty = in_d.value <= vg ? Tri::Holds : Tri::Fails;
    if (nonempty == Tri::Holds) out.v.witness = in_d.x;
  } else if (in_d.value > vg) {
    nonempty = Tri::Fails;
  }
  if (nonempty == Tri::Fails) {
    out.v.verdict = Tri::Fails;
    out.v.reason = "feasible set is empty";
    out.infeasible = true;
    return out;
  }

  // D != {g <= 0}: some x with g(x) <= 0 < h(x).
  const Qp1qcResult hmax = solve_qp1qc(-h, g, opt.tol);
  const bool g_side = hmax.status == Qp1qcStatus::UnboundedBelow ||
                      (hmax.status != Qp1qcStatus::Infeasible && hmax.value < -value_tol(h, opt.tol));
  if (!g_side) {
    out.v.verdict = Tri::Fails;
    out.v.reason = "feasible set equals {g <= 0}";
    out.reduction = single_constraint(g, "h is redundant on {g <= 0}");
    return out;
  }
  const Qp1qcResult gmax = solve_qp1qc(-g, h, opt.tol);
  const bool h_side = gmax.status == Qp1qcStatus::UnboundedBelow ||
                      (gmax.status != Qp1qcStatus::Infeasible && gmax.value < -vg);
  if (!h_side) {
    out.v.verdict = Tri::Fails;
    out.v.reason = "feasible set equals {h <= 0}";
    out.reduction = single_constraint(h, "g is redundant on {h <= 0}");
    return out;
  }
  out.v.verdict = nonempty;
  out.v.reason = nonempty == Tri::Holds ? "nonconstant, feasible, and neither constraint is redundant"
                                        : "could not settle whether the feasible set is empty";
  return out;
}

Detailed assumption4(const QuadForm& g, const QuadForm& h, const ClassifyOptions& opt) {
  Detailed out;
  const SlaterSides sg = slater_two_sided(g, opt.tol.psd);
  const SlaterSides sh = slater_two_sided(h, opt.tol.psd);
  if (sg.takes_negative && sg.takes_positive && sh.takes_negative && sh.takes_positive) {
    out.v.verdict = Tri::Holds;
    out.v.reason = "g and h both take both signs";
    return out;
  }
  out.v.verdict = Tri::Fails;
  auto restrict_to_zero_set = [&](const QuadForm& q, const QuadForm& other, const char* name) {
    const UnconstrainedMin m = unconstrained_min(q, opt.tol.psd);
    out.v.reason = std::string(name) + " is nonnegative everywhere";
    if (!m.minimizer) {
      out.v.verdict = Tri::Undetermined;
      out.v.reason += " within tolerance but its minimum is not attained";
      return;
    }
    if (m.value > value_tol(q, opt.tol)) {
      out.infeasible = true;
      out.v.reason += " with a positive minimum";
      return;
    }
    ReducedProblem r;
    r.kind = ReductionKind::SubspaceRestriction;
    r.description = std::string("feasible set lies in the zero set of ") + name;
    ReducedPiece p{*m.minimizer, m.kernel, restrict_affine(other, *m.minimizer, m.kernel), r.description};
    r.pieces.push_back(std::move(p));
    out.reduction = std::move(r);
  };
  if (!sg.takes_negative) {
    restrict_to_zero_set(g, h, "g");
  } else if (!sh.takes_negative) {
    restrict_to_zero_set(h, g, "h");
  } else if (!sg.takes_positive) {
    out.v.reason = "g is nonpositive everywhere";
    out.reduction = single_constraint(h, "g holds everywhere");
  } else {
    out.v.reason = "h is nonpositive everywhere";
    out.reduction = single_constraint(g, "h holds everywhere");
  }
  return out;
}

Detailed assumption5(const QuadForm& g, const QuadForm& h, const ClassifyOptions& opt) {
  Detailed out;
  out.v.verdict = Tri::Holds;
  out.v.reason = "not applicable";
  auto probe = [&](const QuadForm& q, const QuadForm& other, const char* qn, const char* on) -> bool {
    if (q.is_constant()) return false;
    const CanonicalReduction cr = canonical_reduce(q);
    const CanonicalForm& fm = cr.form;
    if (!(fm.tag == FormTag::Form1 && fm.k == 1 && fm.delta == 0 && fm.theta == 1)) return false;
    const QuadForm hc = companion_in_basis(other, cr.change);
    const double scale = hc.coeff_scale();
    if (scale == 0.0) return false;
    if (hc.A().cwiseAbs().maxCoeff() > kRankThreshold * scale) return false;
    for (Eigen::Index i = 1; i < hc.dim(); ++i) {
      if (std::abs(hc.a()(i)) > kRankThreshold * scale) return false;
    }
    double c1 = 2.0 * hc.a()(0);
    const double c0 = hc.a0();
    if (std::abs(c1) <= kRankThreshold * scale) return false;
    c1 = std::abs(c1);
    const double band = opt.tol.residual * (std::abs(c0) + c1);
    if (std::abs(c0 + c1) <= band) {
      out.v.verdict = Tri::Fails;
      out.degenerate = true;
      out.v.reason = std::string(qn) + " is -y1^2+1 and " + on + " is c1 (y1 - 1) in the reduced basis";
      ReducedProblem r;
      r.kind = ReductionKind::HalfspaceUnionHyperplane;
      r.description = "halfspace y1 <= -1 together with the hyperplane y1 = 1";
      QuadForm shifted = other;
      shifted += QuadForm::constant(other.dim(), 2.0 * c1);
      r.pieces.push_back(whole_space(other.dim(), shifted, "halfspace"));
      r.pieces.push_back(hyperplane_piece(other, "hyperplane"));
      out.reduction = std::move(r);
      return true;
    }
    if (std::abs(c0 - c1) <= band) {
      out.v.verdict = Tri::Fails;
      out.v.reason = std::string(qn) + " is -y1^2+1 and " + on + " is c1 (y1 + 1) in the reduced basis";
      out.reduction = single_constraint(other, std::string(qn) + " is redundant");
      return true;
    }
    out.v.reason = std::string("applies to ") + qn + " and holds";
    return true;
  };
  if (!probe(g, h, "g", "h")) probe(h, g, "h", "g");
  return out;
}

struct AffinePair {
  bool parallel = false;
  double t = 0.0;
  std::optional<ReducedProblem> reduction;
};

AffinePair affine_pair(const QuadForm& g, const QuadForm& h) {
  AffinePair out;
  if (!g.is_affine() || !h.is_affine() || g.is_constant() || h.is_constant()) return out;
  const Vector& b = g.a();
  const Vector& c = h.a();
  const double t = b.dot(c) / b.squaredNorm();
  if ((c - t * b).norm() > 1e-10 * c.norm()) return out;
  out.parallel = true;
  out.t = t;
  const double b0 = g.a0();
  const double c0 = h.a0();
  if (t < 0.0) {
    // (b^T x + c0/(2t)) (b^T x + b0/2) <= 0
    const double alpha = c0 / (2.0 * t);
    const double beta = b0 / 2.0;
    ReducedProblem r;
    r.kind = ReductionKind::ProductConstraint;
    r.description = "slab written as one product constraint";
    QuadForm prod(b * b.transpose(), 0.5 * (alpha + beta) * b, alpha * beta);
    r.pieces.push_back(whole_space(g.dim(), prod, "product"));
    out.reduction = std::move(r);
  } else {
    const bool g_tighter = -b0 / 2.0 <= -c0 / (2.0 * t);
    out.reduction = g_tighter ? single_constraint(g, "parallel halfspaces; h is redundant")
                              : single_constraint(h, "parallel halfspaces; g is redundant");
  }
  return out;
}

std::string slater_note(const QuadForm& g, double psd_tol) {
  const SlaterSides s = slater_two_sided(g, psd_tol);
  return std::string("zero-set function takes both signs: ") + (s.takes_negative && s.takes_positive ? "yes" : "no");
}

AssumptionVerdict assumption1_from(const QuadForm& g, const QuadForm& h, const InclusionVerdict& g_in_h,
                                   const InclusionVerdict& h_in_g, const ClassifyOptions& opt) {
  AssumptionVerdict out;
  // Premise D in {q = 0} is equivalent to min{q : other <= 0} >= 0.
  auto implication = [&](const QuadForm& q, const QuadForm& other, const InclusionVerdict& incl,
                         const char* name) -> std::pair<Tri, std::string> {
    const Qp1qcResult r = solve_qp1qc(q, other, opt.tol);
    const bool premise_false = r.status == Qp1qcStatus::UnboundedBelow ||
                               (r.status != Qp1qcStatus::Infeasible && r.value < -value_tol(q, opt.tol));
    if (premise_false) return {Tri::Holds, std::string(name) + " is negative somewhere on D"};
    const Tri t = inclusion_tri(incl);
    if (t == Tri::Holds) return {Tri::Holds, std::string("D lies in {") + name + "=0} and equals it"};
    if (t == Tri::Fails) {
      if (!out.witness) out.witness = incl.witness;
      return {Tri::Fails, std::string("D lies in {") + name + "=0} but misses part of it"};
    }
    return {Tri::Undetermined, std::string("D lies in {") + name + "=0}; equality not settled"};
  };
  const auto [tg, rg] = implication(g, h, g_in_h, "g");
  const auto [th, rh] = implication(h, g, h_in_g, "h");
  out.verdict = tri_and(tg, th);
  out.reason = rg + "; " + rh;
  if (out.verdict != Tri::Fails) out.witness.reset();
  return out;
}

}  // namespace

SlaterSides slater_two_sided(const QuadForm& q, double psd_tol) {
  return SlaterSides{!nonneg_everywhere(q, psd_tol), !nonneg_everywhere(-q, psd_tol)};
}

std::optional<double> pencil_psd_search(const QuadForm& p, const QuadForm& q, double psd_tol) {
  if (p.dim() != q.dim()) throw Error(ErrorCode::DimensionMismatch, "pencil_psd_search: inconsistent dimensions");
  const Matrix Mp = lift(p);
  const Matrix Mq = lift(q);
  auto ok = [&](double lam) { return psd_status(Mp + lam * Mq, psd_tol).verdict != PsdVerdict::Indefinite; };
  if (ok(0.0)) return 0.0;
  if (Mq.cwiseAbs().maxCoeff() == 0.0) return std::nullopt;
  auto lam_of = [](double u) { return u / (1.0 - std::abs(u)); };
  auto phi = [&](double u) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(Mp + lam_of(u) * Mq, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
  };
  const detail::LineMax lm = detail::golden_max(phi, -detail::kUnitMax, detail::kUnitMax);
  const double lam = lam_of(lm.t);
  if (ok(lam)) return lam;
  return std::nullopt;
}

std::optional<SeparationCertificate> detect_separation_by_hyperplane(const QuadForm& g, const QuadForm& h,
                                                                     double psd_tol) {
  if (g.dim() != h.dim()) throw Error(ErrorCode::DimensionMismatch, "detect_separation: inconsistent dimensions");
  if (g.is_constant()) return std::nullopt;
  const CanonicalReduction cr = canonical_reduce(g);
  if (cr.form.tag != FormTag::Form1 || cr.form.k != 1) return std::nullopt;
  const QuadForm hc = companion_in_basis(h, cr.change);
  const double scale = hc.coeff_scale();
  if (scale == 0.0 || hc.A().cwiseAbs().maxCoeff() > kRankThreshold * scale) return std::nullopt;
  const auto n = g.dim();
  const Vector c = 2.0 * hc.a();
  const double c0 = hc.a0();
  for (Eigen::Index i = cr.form.m; i < n; ++i) {
    if (std::abs(c(i)) > kRankThreshold * scale) return std::nullopt;
  }
  if (std::abs(c(0)) <= kRankThreshold * scale) return std::nullopt;

  Vector y0 = Vector::Zero(n);
  y0(0) = -c0 / c(0);
  Matrix basis = Matrix::Zero(n, n - 1);
  for (Eigen::Index j = 1; j < n; ++j) {
    basis(j, j - 1) = 1.0;
    basis(0, j - 1) = -c(j) / c(0);
  }
  const QuadForm restricted = restrict_affine(cr.form.as_quad(), y0, basis);
  const PsdStatus ps = psd_status(lift(restricted), psd_tol);
  if (ps.verdict == PsdVerdict::Indefinite) return std::nullopt;

  SeparationCertificate cert;
  cert.change = cr.change;
  cert.affine_pattern = Vector(cr.form.m + 1);
  cert.affine_pattern(0) = c0;
  cert.affine_pattern.tail(cr.form.m) = c.head(cr.form.m);
  cert.restriction_nonneg = ps;
  const double R = 2.0 + std::abs(c0 / c(0));
  Vector y = Vector::Zero(n);
  y(0) = -R;
  cert.witness_minus = cr.change.apply(y);
  y(0) = R;
  cert.witness_plus = cr.change.apply(y);
  if (h(cert.witness_minus) > 0.0) std::swap(cert.witness_minus, cert.witness_plus);
  return cert;
}

InclusionVerdict check_inclusion_zeroset(const QuadForm& g, const QuadForm& h, int sign, const ClassifyOptions& opt) {
  if (g.dim() != h.dim()) throw Error(ErrorCode::DimensionMismatch, "check_inclusion: inconsistent dimensions");
  if (sign != 1 && sign != -1) throw Error(ErrorCode::InvalidArgument, "check_inclusion: sign must be +1 or -1");
  InclusionVerdict out;
  const QuadForm sh = static_cast<double>(sign) * h;
  const double vg = value_tol(g, opt.tol);
  const UnconstrainedMin gmin = unconstrained_min(g, opt.tol.psd);
  const UnconstrainedMin gmax = unconstrained_min(-g, opt.tol.psd);
  if ((gmin.minimizer && gmin.value > vg) || (gmax.minimizer && gmax.value > vg)) {
    out.status = InclusionStatus::CertifiedVacuous;
    out.note = "zero set is empty";
    return out;
  }
  if (const auto lam = pencil_psd_search(-sh, g, opt.tol.psd)) {
    out.status = InclusionStatus::CertifiedPencil;
    out.lambda = *lam;
    return out;
  }
  if (g.is_affine()) {
    const ReducedPiece plane = hyperplane_piece(g, "zero set");
    const bool nonneg = plane.basis.cols() == 0
                            ? -sh(plane.origin) >= -value_tol(h, opt.tol)
                            : nonneg_everywhere(restrict_affine(-sh, plane.origin, plane.basis), opt.tol.psd);
    if (nonneg) {
      out.status = InclusionStatus::CertifiedRestriction;
      out.note = "restriction to the hyperplane is nonnegative";
      return out;
    }
  }
  const double margin = value_tol(h, opt.tol);
  std::optional<detail::ZeroSetHit> hit;
  if (g.is_constant()) {
    // g is identically zero here, so the zero set is the whole space.
    std::mt19937_64 rng(opt.search.seed);
    for (const Vector& x : detail::seed_points(g.dim(), opt.search, rng)) {
      const double v = sh(x);
      if (!hit || v > hit->value) hit = detail::ZeroSetHit{x, v};
    }
  } else {
    hit = detail::maximize_on_zero_set(g, sh, opt.search);
  }
  if (hit && hit->value > margin) {
    const double gres = std::abs(g(hit->x));
    if (gres <= 1e-8 * (1.0 + g.coeff_scale() * (1.0 + hit->x.squaredNorm()))) {
      out.status = InclusionStatus::RefutedWitness;
      out.witness = hit->x;
      out.violation = hit->value;
      return out;
    }
  }
  out.status = InclusionStatus::Undetermined;
  out.note = "no pencil certificate and no witness; " + slater_note(g, opt.tol.psd);
  return out;
}

Assumption2Result check_assumption2(const QuadForm& g, const QuadForm& h, const ClassifyOptions& opt) {
  Assumption2Result out;
  out.inclusions[0] = check_inclusion_zeroset(g, h, 1, opt);
  out.inclusions[1] = check_inclusion_zeroset(g, h, -1, opt);
  out.inclusions[2] = check_inclusion_zeroset(h, g, 1, opt);
  out.inclusions[3] = check_inclusion_zeroset(h, g, -1, opt);
  const Tri first = tri_or(inclusion_tri(out.inclusions[0]), inclusion_tri(out.inclusions[1]));
  const Tri second = tri_or(inclusion_tri(out.inclusions[2]), inclusion_tri(out.inclusions[3]));
  out.verdict.verdict = tri_and(first, second);
  if (first == Tri::Fails) {
    out.verdict.reason = "h changes sign on {g=0}";
    out.verdict.witness = out.inclusions[0].witness;
  } else if (second == Tri::Fails) {
    out.verdict.reason = "g changes sign on {h=0}";
    out.verdict.witness = out.inclusions[2].witness;
  } else if (out.verdict.verdict == Tri::Holds) {
    out.verdict.reason = "each zero set lies on one side of the other function";
  } else {
    out.verdict.reason = "some inclusion could be neither certified nor refuted";
  }
  return out;
}

AssumptionVerdict check_assumption1(const QuadForm& g, const QuadForm& h, const ClassifyOptions& opt) {
  const InclusionVerdict a = check_inclusion_zeroset(g, h, 1, opt);
  const InclusionVerdict b = check_inclusion_zeroset(h, g, 1, opt);
  return assumption1_from(g, h, a, b, opt);
}

AssumptionVerdict check_assumption3(const QuadForm& g, const QuadForm& h, const ClassifyOptions& opt) {
  return assumption3(g, h, opt).v;
}

AssumptionVerdict check_assumption4(const QuadForm& g, const QuadForm& h, const ClassifyOptions& opt) {
  return assumption4(g, h, opt).v;
}

AssumptionVerdict check_assumption5(const QuadForm& g, const QuadForm& h, const ClassifyOptions& opt) {
  return assumption5(g, h, opt).v;
}

ArrangementReport classify_problem(const QuadForm& g, const QuadForm& h, const ClassifyOptions& opt) {
  if (g.dim() != h.dim()) throw Error(ErrorCode::DimensionMismatch, "classify_problem: inconsistent dimensions");
  ArrangementReport rep;
  const Detailed a3 = assumption3(g, h, opt);
  const Detailed a4 = assumption4(g, h, opt);
  const Detailed a5 = assumption5(g, h, opt);
  const Assumption2Result a2 = check_assumption2(g, h, opt);
  const AssumptionVerdict a1 = assumption1_from(g, h, a2.inclusions[0], a2.inclusions[2], opt);
  rep.assumptions = {a1, a2.verdict, a3.v, a4.v, a5.v};
  rep.inclusions = a2.inclusions;
  rep.in_non_alter = tri_and(a1.verdict, a2.verdict.verdict);
  const AffinePair ap = affine_pair(g, h);

  if (a3.v.verdict == Tri::Fails) {
    rep.overall = a3.infeasible ? OverallClass::Infeasible : OverallClass::ReducesToQP1QC;
    rep.reduction = a3.reduction;
  } else if (a4.v.verdict == Tri::Fails) {
    rep.overall = a4.infeasible ? OverallClass::Infeasible : OverallClass::ReducesToQP1QC;
    rep.reduction = a4.reduction;
  } else if (a5.v.verdict == Tri::Fails) {
    rep.overall = a5.degenerate ? OverallClass::Assumption5Degenerate : OverallClass::ReducesToQP1QC;
    rep.reduction = a5.reduction;
  } else if (ap.parallel) {
    rep.overall = ap.t < 0.0 ? OverallClass::AffinePairReduction : OverallClass::ReducesToQP1QC;
    rep.reduction = ap.reduction;
  } else if (a1.verdict == Tri::Fails || a2.verdict.verdict == Tri::Fails) {
    rep.overall = OverallClass::OutsideNonAlter;
  } else if (rep.in_non_alter == Tri::Holds && a3.v.verdict == Tri::Holds && a4.v.verdict == Tri::Holds) {
    rep.overall = OverallClass::NonAlter;
  } else {
    rep.overall = OverallClass::Undetermined;
  }
  for (const auto& incl : rep.inclusions) {
    if (incl.status == InclusionStatus::Undetermined && !incl.note.empty()) rep.notes.push_back(incl.note);
  }
  if (g.is_affine() != h.is_affine() && rep.overall == OverallClass::NonAlter) {
    rep.notes.push_back("one constraint is affine; treated through the general dual route");
  }
  return rep;
}

}  // namespace nonalter
