#include "nonalter/qp1qc.hpp"

#include <cmath>
#include <vector>

#include "line_search.hpp"

namespace nonalter {

const char* to_string(Qp1qcStatus s) noexcept {
  switch (s) {
    case Qp1qcStatus::Attained: return "Attained";
    case Qp1qcStatus::Unattained: return "Unattained";
    case Qp1qcStatus::UnboundedBelow: return "UnboundedBelow";
    case Qp1qcStatus::Infeasible: return "Infeasible";
  }
  return "?";
}

namespace {

// Width of the band in which the multiplier domain counts as PSD. The PSD
// tolerance itself is too wide here: d(lambda) stays finite inside it and the
// maximization would drift into the tolerated region.
constexpr double kRoundoffBand = 1e-14;

double min_eig(const Matrix& M) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NonConvergence, "eigenvalue solver failed");
  return es.eigenvalues()(0);
}

Qp1qcResult unbounded(std::string note) {
  Qp1qcResult r;
  r.status = Qp1qcStatus::UnboundedBelow;
  r.value = -kInf;
  r.note = std::move(note);
  return r;
}

Qp1qcResult infeasible(std::string note) {
  Qp1qcResult r;
  r.status = Qp1qcStatus::Infeasible;
  r.value = kInf;
  r.note = std::move(note);
  return r;
}

Qp1qcResult without_constraint(const QuadForm& f, const QuadForm& g, const Tolerances& tol, std::string note) {
  const UnconstrainedMin um = unconstrained_min(f, tol.psd);
  if (!um.minimizer) return unbounded(std::move(note));
  Qp1qcResult r;
  r.status = Qp1qcStatus::Attained;
  r.x = *um.minimizer;
  r.value = f(*r.x);
  r.kkt.stationarity = (f.A() * *r.x + f.a()).norm();
  r.kkt.feasibility = g(*r.x);
  r.note = std::move(note);
  return r;
}

// Largest singular directions of [A; B] below the rank threshold.
Matrix shared_kernel(const Matrix& A, const Matrix& B) {
  const auto n = A.rows();
  Matrix stacked(2 * n, n);
  stacked << A, B;
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax == 0.0) return Matrix::Identity(n, n);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > kRankThreshold * smax) ++rank;
  if (rank == n) return Matrix(n, 0);
  return null_basis(svd.matrixV().rightCols(n - rank) * svd.matrixV().rightCols(n - rank).transpose() -
                    Matrix::Identity(n, n));
}

}  // namespace

Qp1qcResult solve_on_affine_subspace(const QuadForm& f, const Vector& x0, const Matrix& N, const Tolerances& tol) {
  if (x0.size() != f.dim() || N.rows() != f.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "solve_on_affine_subspace: inconsistent dimensions");
  }
  Qp1qcResult r;
  if (N.cols() == 0) {
    r.status = Qp1qcStatus::Attained;
    r.x = x0;
    r.value = f(x0);
    return r;
  }
  const QuadForm fr = restrict_affine(f, x0, N);
  const UnconstrainedMin um = unconstrained_min(fr, tol.psd);
  if (!um.minimizer) return unbounded("restricted objective unbounded below");
  r.status = Qp1qcStatus::Attained;
  r.x = x0 + N * *um.minimizer;
  r.value = f(*r.x);
  r.kkt.stationarity = (N.transpose() * (f.A() * *r.x + f.a())).norm();
  return r;
}

Qp1qcResult solve_qp1qc(const QuadForm& f, const QuadForm& g, const Tolerances& tol) {
  if (f.dim() != g.dim()) throw Error(ErrorCode::DimensionMismatch, "solve_qp1qc: f and g differ in dimension");

  if (g.is_constant()) {
    if (g.a0() <= 0.0) return without_constraint(f, g, tol, "constraint is a nonpositive constant");
    return infeasible("constraint is a positive constant");
  }
  if (nonneg_everywhere(-g, tol.psd)) return without_constraint(f, g, tol, "constraint holds everywhere");

  if (nonneg_everywhere(g, tol.psd)) {
    const UnconstrainedMin gm = unconstrained_min(g, tol.psd);
    if (gm.minimizer) {
      if (gm.value > tol.residual * (1.0 + g.coeff_scale())) return infeasible("constraint minimum is positive");
      Qp1qcResult r = solve_on_affine_subspace(f, *gm.minimizer, gm.kernel, tol);
      if (r.x) r.kkt.feasibility = g(*r.x);
      r.note = "no strictly feasible point; minimized over the zero set of the constraint";
      return r;
    }
  }

  const double sf = spectral_norm(f.A());
  const double sg = spectral_norm(g.A());
  int evals = 0;

  auto psi = [&](double u) {
    const double lam = detail::ray_from_unit(u);
    return min_eig(f.A() + lam * g.A()) + kRoundoffBand * (1.0 + sf + lam * sg);
  };
  auto dual = [&](double lam) {
    ++evals;
    return unconstrained_min(f + lam * g, tol.psd, sf + lam * sg).value;
  };

  const detail::LineMax pm = detail::golden_max(psi, 0.0, detail::kUnitMax);
  if (pm.value < 0.0) return unbounded("no multiplier makes the Lagrangian convex");
  auto psd_ok = [&](double u) { return psi(u) >= 0.0; };
  const double ulo = detail::bisect_first_true(psd_ok, 0.0, pm.t);
  const double uhi = detail::bisect_last_true(psd_ok, pm.t, detail::kUnitMax);
  const double lam_lo = detail::ray_from_unit(ulo);
  const double lam_hi = detail::ray_from_unit(uhi);

  double lam_star = 0.0;
  double value = -kInf;
  const Matrix K = shared_kernel(f.A(), g.A());
  if (K.cols() > 0) {
    const Vector alpha = K.transpose() * f.a();
    const Vector beta = K.transpose() * g.a();
    const double eps = 1e-8 * (1.0 + f.a().norm() + g.a().norm());
    if (beta.norm() <= eps) {
      if (alpha.norm() > eps) return unbounded("objective is linear along a direction the constraint ignores");
      const detail::LineMax dm = detail::golden_max([&](double u) { return dual(detail::ray_from_unit(u)); }, ulo, uhi);
      lam_star = detail::ray_from_unit(dm.t);
      value = dm.value;
    } else {
      const double lk = -alpha.dot(beta) / beta.squaredNorm();
      if ((alpha + lk * beta).norm() > eps || lk < 0.0) return unbounded("no multiplier cancels the shared kernel");
      const double slack = 1e-9 * (1.0 + lk);
      if (lk < lam_lo - slack || lk > lam_hi + slack) return unbounded("kernel multiplier outside the convex range");
      lam_star = lk;
      value = dual(lk);
    }
  } else {
    const detail::LineMax dm = detail::golden_max([&](double u) { return dual(detail::ray_from_unit(u)); }, ulo, uhi);
    lam_star = detail::ray_from_unit(dm.t);
    value = dm.value;
  }
  if (!std::isfinite(value)) return unbounded("dual function is -inf on the whole multiplier range");

  // The golden bracket leaves lambda accurate only to about sqrt(eps). The
  // derivative d'(lambda) = g(x(lambda)) is decreasing; bisect on its sign.
  if (K.cols() == 0) {
    auto slope = [&](double lam) -> std::optional<double> {
      const UnconstrainedMin um = unconstrained_min(f + lam * g, tol.psd, sf + lam * sg);
      ++evals;
      if (!um.minimizer) return std::nullopt;
      return g(*um.minimizer);
    };
    const auto s0 = slope(lam_star);
    if (s0 && *s0 != 0.0) {
      const bool up = *s0 > 0.0;
      const double edge = up ? lam_hi : lam_lo;
      double inner = lam_star, outer = lam_star;
      double step = 1e-6 * (1.0 + lam_star);
      bool bracketed = false;
      for (int i = 0; i < 60 && !bracketed; ++i) {
        outer = up ? std::min(lam_star + step, edge) : std::max(lam_star - step, edge);
        const auto so = slope(outer);
        if (!so) break;
        if ((*so > 0.0) != up || *so == 0.0) {
          bracketed = true;
        } else {
          inner = outer;
          if (outer == edge) break;
          step *= 4.0;
        }
      }
      double lam_new = inner;
      if (bracketed) {
        for (int i = 0; i < 200; ++i) {
          const double mid = 0.5 * (inner + outer);
          if (mid == inner || mid == outer) break;
          const auto sm = slope(mid);
          if (!sm) break;
          if ((*sm > 0.0) == up && *sm != 0.0) inner = mid; else outer = mid;
        }
        lam_new = std::abs(*slope(inner)) <= std::abs(slope(outer).value_or(kInf)) ? inner : outer;
      }
      const double v_new = dual(lam_new);
      if (v_new >= value - 1e-12 * (1.0 + std::abs(value))) {
        lam_star = lam_new;
        value = v_new;
      }
    }
  }

  // Recovery.
  const Matrix Q = f.A() + lam_star * g.A();
  const Vector v = f.a() + lam_star * g.a();
  const double scale = 1.0 + sf + lam_star * sg;
  const EigenDecomp ed = sym_eigen(Q);
  const double value_tol = tol.residual * (1.0 + std::abs(value));

  Qp1qcResult best;
  best.status = Qp1qcStatus::Unattained;
  best.value = value;
  best.lambda = lam_star;
  best.evaluations = evals;

  auto fill_kkt = [&](const Vector& x) {
    KktResiduals k;
    k.stationarity = (Q * x + v).norm();
    k.feasibility = g(x);
    k.complementarity = std::abs(lam_star * k.feasibility);
    return k;
  };
  auto accept = [&](const Vector& x) {
    const double feas_tol = tol.residual * (1.0 + g.coeff_scale() * (1.0 + x.squaredNorm()));
    const double gx = g(x);
    if (gx > feas_tol) return false;
    if (std::abs(f(x) - value) > value_tol) return false;
    if (lam_star * std::abs(gx) > value_tol + lam_star * feas_tol) return false;
    return true;
  };
  auto take = [&](const Vector& x) {
    best.status = Qp1qcStatus::Attained;
    best.x = x;
    best.kkt = fill_kkt(x);
    return best;
  };

  auto partial_solution = [&](double cut) {
    Vector x = Vector::Zero(f.dim());
    std::vector<Eigen::Index> kernel;
    for (Eigen::Index i = 0; i < ed.values.size(); ++i) {
      if (ed.values(i) > cut) {
        x -= (ed.vectors.col(i).dot(v) / ed.values(i)) * ed.vectors.col(i);
      } else {
        kernel.push_back(i);
      }
    }
    return std::make_pair(x, kernel);
  };

  for (const double cut : {tol.psd * scale, 1e-7 * scale}) {
    auto [x0, kernel] = partial_solution(cut);
    if (accept(x0)) return take(x0);
    for (const auto i : kernel) {
      const Vector z = ed.vectors.col(i);
      const double alpha = z.dot(g.A() * z);
      const double beta = 2.0 * z.dot(g.A() * x0 + g.a());
      const double gamma = g(x0);
      double roots[2];
      const int nr = detail::quadratic_roots(alpha, beta, gamma, roots);
      for (int j = 0; j < nr; ++j) {
        const Vector x = x0 + roots[j] * z;
        if (accept(x)) {
          take(x);
          best.note = "hard case: kernel step to the constraint boundary";
          return best;
        }
      }
    }
  }
  best.note = "no primal point meets feasibility and complementarity at the dual optimum";
  return best;
}

}  // namespace nonalter
