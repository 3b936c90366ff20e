#include "line_search.hpp"

#include <algorithm>

namespace nonalter::detail {

int quadratic_roots(double alpha, double beta, double gamma, double roots[2]) {
  const double lin_scale = std::abs(beta) + std::abs(gamma);
  int count = 0;
  if (std::abs(alpha) <= 1e-14 * (1.0 + lin_scale)) {
    if (beta == 0.0) return 0;
    roots[count++] = -gamma / beta;
    return count;
  }
  const double disc = beta * beta - 4.0 * alpha * gamma;
  if (disc < 0.0) return 0;
  const double sq = std::sqrt(disc);
  // Cancellation-free pair.
  const double qv = -0.5 * (beta + (beta >= 0 ? sq : -sq));
  double r1 = qv / alpha;
  double r2 = qv != 0.0 ? gamma / qv : r1;
  if (std::abs(r2) < std::abs(r1) || (std::abs(r2) == std::abs(r1) && r2 > r1)) std::swap(r1, r2);
  roots[count++] = r1;
  roots[count++] = r2;
  return count;
}

}  // namespace nonalter::detail
