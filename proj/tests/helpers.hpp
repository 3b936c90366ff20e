#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "nonalter/quad_core.hpp"

namespace th {

using nonalter::Matrix;
using nonalter::QuadForm;
using nonalter::Vector;

// p(x, y) = xx x^2 + xy x y + yy y^2 + x1 x + y1 y + c
inline QuadForm poly2(double xx, double xy, double yy, double x1, double y1, double c) {
  Matrix A(2, 2);
  A << xx, xy / 2, xy / 2, yy;
  Vector a(2);
  a << x1 / 2, y1 / 2;
  return QuadForm(A, a, c);
}

// p(x) = xx x^2 + x1 x + c
inline QuadForm poly1(double xx, double x1, double c) {
  Matrix A(1, 1);
  A << xx;
  Vector a(1);
  a << x1 / 2;
  return QuadForm(A, a, c);
}

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Matrix random_sym(std::mt19937_64& rng, Eigen::Index n, double lo = -3, double hi = 3) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) A(i, j) = A(j, i) = u(rng);
  return A;
}

inline QuadForm random_quad(std::mt19937_64& rng, Eigen::Index n, double lo = -3, double hi = 3) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector a(n);
  for (Eigen::Index i = 0; i < n; ++i) a(i) = u(rng);
  return QuadForm(random_sym(rng, n, lo, hi), a, u(rng));
}

// Brute-force minimum of f over a 2-D box subject to c(x) <= slack for each c,
// written independently of the library oracle. Returns +inf when no grid point qualifies.
struct Brute {
  double value = INFINITY;
  Vector x;
};

inline Brute brute_min_2d(const std::function<double(double, double)>& f,
                          const std::vector<std::function<double(double, double)>>& cons, double lo, double hi,
                          int res, double slack) {
  Brute b;
  b.x = Vector::Zero(2);
  const double h = (hi - lo) / (res - 1);
  for (int i = 0; i < res; ++i) {
    for (int j = 0; j < res; ++j) {
      const double x = lo + i * h, y = lo + j * h;
      bool ok = true;
      for (const auto& c : cons) ok = ok && c(x, y) <= slack;
      if (!ok) continue;
      const double v = f(x, y);
      if (v < b.value) {
        b.value = v;
        b.x << x, y;
      }
    }
  }
  return b;
}

}  // namespace th
