#pragma once

// Golden-section maximization shared by the 1-D and 2-D multiplier searches.

#include <cmath>
#include <utility>

#include "nonalter/quad_core.hpp"

namespace nonalter::detail {

struct LineMax {
  double t = 0.0;
  double value = -kInf;
  int evals = 0;
};

/// Maximizes a unimodal fn on [lo, hi]. Values of -inf are allowed; when both
/// probes are -inf the bracket shrinks toward `lo`, which is correct whenever
/// fn is finite near lo and -inf beyond some point (concave function on a
/// convex domain, anchored at lo). Equal finite probes also shrink toward lo.
template <class F>
LineMax golden_max(F&& fn, double lo, double hi, double xtol = 1e-13, int max_iter = 200) {
  constexpr double r = 0.6180339887498949;
  LineMax best;
  auto consider = [&](double t, double v) {
    if (v > best.value || (best.evals == 0 && v == best.value)) {
      best.t = t;
      best.value = v;
    }
    ++best.evals;
  };
  double a = lo, b = hi;
  const double flo = fn(lo);
  consider(lo, flo);
  if (hi > lo) consider(hi, fn(hi));
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  consider(x1, f1);
  consider(x2, f2);
  for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
    if (f1 == -kInf && f2 == -kInf) {
      b = x1;
      x1 = b - r * (b - a);
      x2 = a + r * (b - a);
      f1 = fn(x1);
      f2 = fn(x2);
      consider(x1, f1);
      consider(x2, f2);
    } else if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = fn(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = fn(x2);
      consider(x2, f2);
    }
  }
  return best;
}

/// Largest t in [a, b] with pred(t) true, given pred(a) true and pred monotone
/// (true then false). Returns a when pred(b) is already false at the start.
template <class P>
double bisect_last_true(P&& pred, double a, double b, int iters = 100) {
  if (pred(b)) return b;
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (pred(mid)) a = mid; else b = mid;
  }
  return a;
}

/// Smallest t in [a, b] with pred(t) true, given pred(b) true and pred monotone.
template <class P>
double bisect_first_true(P&& pred, double a, double b, int iters = 100) {
  if (pred(a)) return a;
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    if (pred(mid)) b = mid; else a = mid;
  }
  return b;
}

/// Multiplier map from [0, 1) onto [0, inf).
inline double ray_from_unit(double u) { return u / (1.0 - u); }
inline double unit_from_ray(double lambda) { return lambda / (1.0 + lambda); }

/// Largest unit coordinate used when scanning a ray (lambda about 1e9).
inline constexpr double kUnitMax = 1.0 - 1e-9;

/// Real roots of alpha t^2 + beta t + gamma = 0 (linear when alpha is tiny
/// relative to beta), sorted by |t| with the positive root first on ties.
int quadratic_roots(double alpha, double beta, double gamma, double roots[2]);

}  // namespace nonalter::detail
