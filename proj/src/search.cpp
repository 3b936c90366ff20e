#include "search.hpp"

#include <algorithm>
#include <cmath>

#include "line_search.hpp"

namespace nonalter::detail {

std::vector<Vector> seed_points(Eigen::Index n, const SearchSpec& spec, std::mt19937_64& rng) {
  std::vector<Vector> pts;
  if (n <= spec.grid_max_dim && spec.grid_per_axis >= 2) {
    const int k = spec.grid_per_axis;
    std::size_t total = 1;
    for (Eigen::Index i = 0; i < n; ++i) total *= static_cast<std::size_t>(k);
    pts.reserve(total + static_cast<std::size_t>(spec.samples));
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    const double h = (spec.hi - spec.lo) / (k - 1);
    for (std::size_t c = 0; c < total; ++c) {
      Vector x(n);
      for (Eigen::Index i = 0; i < n; ++i) x(i) = spec.lo + h * idx[static_cast<std::size_t>(i)];
      pts.push_back(std::move(x));
      for (Eigen::Index i = n - 1; i >= 0; --i) {
        if (++idx[static_cast<std::size_t>(i)] < k) break;
        idx[static_cast<std::size_t>(i)] = 0;
      }
    }
  }
  std::uniform_real_distribution<double> u(spec.lo, spec.hi);
  for (int s = 0; s < spec.samples; ++s) {
    Vector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = u(rng);
    pts.push_back(std::move(x));
  }
  return pts;
}

std::optional<double> nearest_root_along(const QuadForm& q, const Vector& x, const Vector& d) {
  const Vector Ad = q.A() * d;
  const double alpha = d.dot(Ad);
  const double beta = 2.0 * (x.dot(Ad) + q.a().dot(d));
  const double gamma = q(x);
  double roots[2];
  const int nr = quadratic_roots(alpha, beta, gamma, roots);
  if (nr == 0) return std::nullopt;
  return roots[0];
}

namespace {

struct Candidate {
  Vector x;
  double value;
};

void keep_best(std::vector<Candidate>& best, std::size_t cap, Vector x, double v) {
  if (!std::isfinite(v)) return;
  if (best.size() == cap && v <= best.back().value) return;
  auto it = std::upper_bound(best.begin(), best.end(), v, [](double val, const Candidate& c) { return val > c.value; });
  best.insert(it, Candidate{std::move(x), v});
  if (best.size() > cap) best.pop_back();
}

Candidate refine(const QuadForm& g, const QuadForm& phi, Candidate c, const SearchSpec& spec) {
  double step = 0.05 * (spec.hi - spec.lo);
  const double reach = 4.0 * std::max(std::abs(spec.lo), std::abs(spec.hi));
  for (int it = 0; it < spec.refine_steps && step > 1e-12; ++it) {
    const Vector gp = phi.gradient(c.x);
    const Vector gn = g.gradient(c.x);
    const double nn = gn.squaredNorm();
    if (nn == 0.0) break;
    const Vector tangent = gp - (gp.dot(gn) / nn) * gn;
    const double tn = tangent.norm();
    if (tn <= 1e-14 * (1.0 + gp.norm())) break;
    const Vector trial = c.x + (step / tn) * tangent;
    const Vector n2 = g.gradient(trial);
    const auto t = n2.squaredNorm() > 0.0 ? nearest_root_along(g, trial, n2) : std::nullopt;
    if (!t) {
      step *= 0.5;
      continue;
    }
    Vector xn = trial + *t * n2;
    if (xn.lpNorm<Eigen::Infinity>() > reach) {
      step *= 0.5;
      continue;
    }
    const double v = phi(xn);
    if (v > c.value) {
      c.x = std::move(xn);
      c.value = v;
      step *= 1.5;
    } else {
      step *= 0.5;
    }
  }
  return c;
}

}  // namespace

std::optional<ZeroSetHit> maximize_on_zero_set(const QuadForm& g, const QuadForm& phi, const SearchSpec& spec) {
  const Eigen::Index n = g.dim();
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Vector> seeds = seed_points(n, spec, rng);
  seeds.push_back(Vector::Zero(n));
  const UnconstrainedMin um = unconstrained_min(g);
  if (um.minimizer) seeds.push_back(*um.minimizer);

  constexpr std::size_t kKeep = 8;
  const double reach = 4.0 * std::max(std::abs(spec.lo), std::abs(spec.hi));
  std::vector<Candidate> best;
  Vector dir(n);
  for (const Vector& p : seeds) {
    for (int which = 0; which < 2; ++which) {
      if (which == 0) {
        dir = g.gradient(p);
        if (dir.squaredNorm() == 0.0) continue;
      } else {
        for (Eigen::Index i = 0; i < n; ++i) dir(i) = normal(rng);
      }
      const Vector Ad = g.A() * dir;
      const double alpha = dir.dot(Ad);
      const double beta = 2.0 * (p.dot(Ad) + g.a().dot(dir));
      const double gamma = g(p);
      double roots[2];
      const int nr = quadratic_roots(alpha, beta, gamma, roots);
      for (int r = 0; r < nr; ++r) {
        Vector x = p + roots[r] * dir;
        if (x.lpNorm<Eigen::Infinity>() > reach) continue;
        const double v = phi(x);
        keep_best(best, kKeep, std::move(x), v);
      }
    }
  }
  if (best.empty()) return std::nullopt;
  ZeroSetHit hit;
  for (Candidate& c : best) {
    Candidate r = refine(g, phi, c, spec);
    if (r.value > hit.value) {
      hit.value = r.value;
      hit.x = r.x;
    }
  }
  return hit;
}

}  // namespace nonalter::detail
