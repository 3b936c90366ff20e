#include "nonalter/duality.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "line_search.hpp"

namespace nonalter {

namespace {

// Negative eigenvalues beyond this relative band put a multiplier outside the
// dual domain. Kept at roundoff level so the maximizer cannot exploit the PSD
// tolerance, which would inflate the dual value along the domain boundary.
constexpr double kDomainBand = 1e-14;

struct Norms {
  double f, g, h;
};

double dual_value(const QuadForm& f, const QuadForm& g, const QuadForm& h, const Norms& nm, double l1, double l2,
                  double psd_tol) {
  if (!(l1 >= 0.0) || !(l2 >= 0.0) || !std::isfinite(l1) || !std::isfinite(l2)) return -kInf;
  const Matrix Q = f.A() + l1 * g.A() + l2 * h.A();
  const Vector v = f.a() + l1 * g.a() + l2 * h.a();
  const double s = f.a0() + l1 * g.a0() + l2 * h.a0();
  const double scale = 1.0 + nm.f + l1 * nm.g + l2 * nm.h;
  Eigen::SelfAdjointEigenSolver<Matrix> es(Q);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NonConvergence, "eigenvalue solver failed");
  const Vector& ev = es.eigenvalues();
  if (ev.size() > 0 && ev(0) < -kDomainBand * scale) return -kInf;
  const Vector c = es.eigenvectors().transpose() * v;
  const double kernel_band = psd_tol * scale;
  double ker2 = 0.0;
  double value = s;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) <= kernel_band) {
      ker2 += c(i) * c(i);
    } else {
      value -= c(i) * c(i) / ev(i);
    }
  }
  if (std::sqrt(ker2) > 1e-8 * (1.0 + v.norm())) return -kInf;
  return value;
}

double min_eig_scaled(const QuadForm& f, const QuadForm& g, const QuadForm& h, const Norms& nm, double l1,
                      double l2) {
  const Matrix Q = f.A() + l1 * g.A() + l2 * h.A();
  Eigen::SelfAdjointEigenSolver<Matrix> es(Q, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) / (1.0 + nm.f + l1 * nm.g + l2 * nm.h);
}

using U2 = std::array<double, 2>;

U2 clamp_unit(U2 u) {
  for (double& c : u) c = std::clamp(c, 0.0, detail::kUnitMax);
  return u;
}

// Derivative-free simplex ascent in the unit square.
template <class F>
std::pair<U2, double> simplex_ascent(F&& fn, U2 start, double fstart, double step, int iterations) {
  std::array<U2, 3> p{start, start, start};
  p[1][0] = start[0] + step <= detail::kUnitMax ? start[0] + step : start[0] - step;
  p[2][1] = start[1] + step <= detail::kUnitMax ? start[1] + step : start[1] - step;
  for (auto& q : p) q = clamp_unit(q);
  std::array<double, 3> v{fstart, fn(p[1]), fn(p[2])};
  auto order = [&]() {
    std::array<int, 3> idx{0, 1, 2};
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] > v[b]; });
    std::array<U2, 3> np{p[idx[0]], p[idx[1]], p[idx[2]]};
    std::array<double, 3> nv{v[idx[0]], v[idx[1]], v[idx[2]]};
    p = np;
    v = nv;
  };
  for (int it = 0; it < iterations; ++it) {
    order();
    const U2 c{0.5 * (p[0][0] + p[1][0]), 0.5 * (p[0][1] + p[1][1])};
    auto along = [&](double t) { return clamp_unit(U2{c[0] + t * (p[2][0] - c[0]), c[1] + t * (p[2][1] - c[1])}); };
    const U2 r = along(-1.0);
    const double fr = fn(r);
    if (fr > v[0]) {
      const U2 e = along(-2.0);
      const double fe = fn(e);
      if (fe > fr) { p[2] = e; v[2] = fe; } else { p[2] = r; v[2] = fr; }
    } else if (fr > v[1]) {
      p[2] = r;
      v[2] = fr;
    } else {
      const bool outside = fr > v[2];
      const U2 k = along(outside ? -0.5 : 0.5);
      const double fk = fn(k);
      if (fk > std::max(fr, v[2]) || (fk == v[2] && fk > -kInf && !outside)) {
        p[2] = k;
        v[2] = fk;
      } else {
        for (int i = 1; i < 3; ++i) {
          p[i] = clamp_unit(U2{0.5 * (p[0][0] + p[i][0]), 0.5 * (p[0][1] + p[i][1])});
          v[i] = fn(p[i]);
        }
      }
    }
  }
  order();
  return {p[0], v[0]};
}

}  // namespace

double lagrangian_dual_value(const QuadForm& f, const QuadForm& g, const QuadForm& h, double l1, double l2,
                             double psd_tol) {
  if (f.dim() != g.dim() || f.dim() != h.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "lagrangian_dual_value: inconsistent dimensions");
  }
  const Norms nm{spectral_norm(f.A()), spectral_norm(g.A()), spectral_norm(h.A())};
  return dual_value(f, g, h, nm, l1, l2, psd_tol);
}

Matrix slack_matrix(const QuadForm& f, const QuadForm& g, const QuadForm& h, double gamma, double l1, double l2) {
  Matrix Z = lift(f) + l1 * lift(g) + l2 * lift(h);
  Z(0, 0) -= gamma;
  return Z;
}

SdpCertificate sdp_certificate(const QuadForm& f, const QuadForm& g, const QuadForm& h, const DualPoint& p,
                               double psd_tol) {
  SdpCertificate c;
  if (!std::isfinite(p.gamma)) return c;
  const Matrix Z = slack_matrix(f, g, h, p.gamma, p.lambda1, p.lambda2);
  const PsdStatus st = psd_status(Z, psd_tol);
  c.min_eig = st.min_eig;
  c.norm = spectral_norm(Z);
  c.feasible = st.verdict != PsdVerdict::Indefinite;
  return c;
}

const char* to_string(DualStatus s) noexcept {
  switch (s) {
    case DualStatus::Finite: return "Finite";
    case DualStatus::DualInfeasibleEverywhere: return "DualInfeasibleEverywhere";
    case DualStatus::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

DualSolveResult solve_dual_2d(const QuadForm& f, const QuadForm& g, const QuadForm& h, const DualOptions& opt) {
  if (f.dim() != g.dim() || f.dim() != h.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "solve_dual_2d: inconsistent dimensions");
  }
  const Norms nm{spectral_norm(f.A()), spectral_norm(g.A()), spectral_norm(h.A())};
  DualSolveResult out;
  bool budget_hit = false;

  auto d_lambda = [&](double l1, double l2, const char* phase) {
    if (out.evaluations >= opt.budget) {
      budget_hit = true;
      return -kInf;
    }
    ++out.evaluations;
    const double v = dual_value(f, g, h, nm, l1, l2, opt.tol.psd);
    if (opt.record_trace) out.trace.push_back({phase, l1, l2, v});
    return v;
  };
  auto d_unit = [&](const U2& u, const char* phase) {
    return d_lambda(detail::ray_from_unit(u[0]), detail::ray_from_unit(u[1]), phase);
  };

  // Grid phase; strict improvement keeps the lexicographically lowest cell on ties.
  U2 best_u{0.0, 0.0};
  double best = -kInf;
  bool any = false;
  for (int i = 0; i < opt.grid; ++i) {
    for (int j = 0; j < opt.grid; ++j) {
      const U2 u{static_cast<double>(i) / opt.grid, static_cast<double>(j) / opt.grid};
      const double v = d_unit(u, "grid");
      if (v > best || (!any && v > -kInf)) {
        best = v;
        best_u = u;
        any = any || v > -kInf;
      }
    }
  }

  if (!any) {
    // Look for a multiplier with a PSD Hessian before giving up.
    auto eig_unit = [&](const U2& u) {
      ++out.evaluations;
      return min_eig_scaled(f, g, h, nm, detail::ray_from_unit(u[0]), detail::ray_from_unit(u[1]));
    };
    U2 start{0.0, 0.0};
    double start_v = -kInf;
    for (int i = 0; i < opt.grid; ++i) {
      for (int j = 0; j < opt.grid; ++j) {
        const U2 u{static_cast<double>(i) / opt.grid, static_cast<double>(j) / opt.grid};
        const double v = eig_unit(u);
        if (v > start_v) {
          start_v = v;
          start = u;
        }
      }
    }
    auto [u, v] = simplex_ascent(eig_unit, start, start_v, 1.0 / opt.grid, 4 * opt.simplex_iterations);
    const double dv = d_unit(u, "fallback");
    if (dv > -kInf) {
      best = dv;
      best_u = u;
      any = true;
    }
  }
  if (!any) {
    out.status = DualStatus::DualInfeasibleEverywhere;
    out.note = "every probed multiplier gives -inf";
    return out;
  }

  auto [u_nm, v_nm] = simplex_ascent([&](const U2& u) { return d_unit(u, "simplex"); }, best_u, best,
                                     1.0 / opt.grid, opt.simplex_iterations);
  if (v_nm > best) {
    best = v_nm;
    best_u = u_nm;
  }

  // Polish: anchored line searches in multiplier space, alternated with simplex restarts.
  double l1 = detail::ray_from_unit(best_u[0]);
  double l2 = detail::ray_from_unit(best_u[1]);
  const double conv = 1e-12;
  bool converged = false;
  std::array<double, 2> prev{l1, l2};
  for (int round = 0; round < 200 && !budget_hit; ++round) {
    const double start_round = best;
    std::vector<std::array<double, 2>> dirs = {{1, 0}, {0, 1}, {M_SQRT1_2, M_SQRT1_2}, {M_SQRT1_2, -M_SQRT1_2}};
    const double dx = l1 - prev[0], dy = l2 - prev[1];
    const double dn = std::hypot(dx, dy);
    if (dn > 0.0) dirs.push_back({dx / dn, dy / dn});
    prev = {l1, l2};
    for (const auto& dir : dirs) {
      for (const double sign : {1.0, -1.0}) {
        const double sc = 1.0 + std::hypot(l1, l2);
        const double b1 = l1, b2 = l2;
        auto phi = [&](double s) {
          const double t = sign * sc * detail::ray_from_unit(s);
          return d_lambda(b1 + t * dir[0], b2 + t * dir[1], "line");
        };
        const detail::LineMax lm = detail::golden_max(phi, 0.0, detail::kUnitMax, 1e-13, 120);
        if (lm.value > best) {
          const double t = sign * sc * detail::ray_from_unit(lm.t);
          l1 = std::max(0.0, b1 + t * dir[0]);
          l2 = std::max(0.0, b2 + t * dir[1]);
          best = d_lambda(l1, l2, "line");
        }
      }
    }
    const U2 cur{detail::unit_from_ray(l1), detail::unit_from_ray(l2)};
    auto [u2, v2] = simplex_ascent([&](const U2& u) { return d_unit(u, "simplex"); }, cur, best,
                                   1e-3 * (1.0 - std::max(cur[0], cur[1])) + 1e-9, opt.simplex_iterations / 4);
    if (v2 > best) {
      best = v2;
      l1 = detail::ray_from_unit(u2[0]);
      l2 = detail::ray_from_unit(u2[1]);
    }
    if (best - start_round <= conv * (1.0 + std::abs(best))) {
      converged = true;
      break;
    }
  }

  out.value = best;
  out.best.lambda1 = l1;
  out.best.lambda2 = l2;
  out.best.gamma = best;
  out.best.slack_min_eig = sdp_certificate(f, g, h, out.best, opt.tol.psd).min_eig;
  if (budget_hit && !converged) {
    out.status = DualStatus::NumericalFailure;
    out.note = "evaluation budget exhausted before the value settled";
  } else {
    out.status = DualStatus::Finite;
  }
  return out;
}

}  // namespace nonalter
