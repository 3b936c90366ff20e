#include "nonalter/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace nonalter {

namespace {

struct Fast {
  int n = 0;
  double A[kOracleMaxDim * kOracleMaxDim] = {};
  double a[kOracleMaxDim] = {};
  double a0 = 0.0;

  explicit Fast(const QuadForm& q) : n(static_cast<int>(q.dim())), a0(q.a0()) {
    for (int i = 0; i < n; ++i) {
      a[i] = q.a()(i);
      for (int j = 0; j < n; ++j) A[i * n + j] = q.A()(i, j);
    }
  }

  double operator()(const double* x) const {
    double v = a0;
    for (int i = 0; i < n; ++i) {
      double row = 2.0 * a[i];
      for (int j = 0; j < n; ++j) row += A[i * n + j] * x[j];
      v += row * x[i];
    }
    return v;
  }
};

void check_dims(const QuadForm& f, const QuadForm& g, const QuadForm& h, const GridSpec& spec) {
  const Eigen::Index n = f.dim();
  if (g.dim() != n || h.dim() != n || spec.lo.size() != n || spec.hi.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "oracle: inconsistent dimensions");
  }
  if (n < 1 || n > kOracleMaxDim) throw Error(ErrorCode::Unsupported, "oracle: dimension must be 1, 2 or 3");
  if (spec.resolution < 3) throw Error(ErrorCode::InvalidArgument, "oracle: resolution must be at least 3");
  if (!(spec.eps >= 0.0)) throw Error(ErrorCode::InvalidArgument, "oracle: eps must be nonnegative");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(spec.lo(i) < spec.hi(i))) throw Error(ErrorCode::InvalidArgument, "oracle: bounds must satisfy lo < hi");
  }
}

long long total_points(int n, int res) {
  long long t = 1;
  for (int i = 0; i < n; ++i) t *= res;
  return t;
}

void point_at(long long index, const GridSpec& spec, const Vector& step, double* x) {
  const int n = static_cast<int>(spec.lo.size());
  for (int i = n - 1; i >= 0; --i) {
    const long long k = index % spec.resolution;
    index /= spec.resolution;
    x[i] = k == spec.resolution - 1 ? spec.hi(i) : spec.lo(i) + step(i) * static_cast<double>(k);
  }
}

Vector to_vector(const double* x, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = x[i];
  return v;
}

/// Visits every grid point, split into contiguous index ranges across threads.
/// Each worker reports into its own slot so the reduction is order-independent.
template <class Worker>
void for_each_chunk(long long total, Worker&& work) {
  const unsigned hw = std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
  const long long chunks = std::min<long long>(hw, std::max<long long>(1, total / 4096));
  if (chunks <= 1) {
    work(0, 0, total);
    return;
  }
  std::vector<std::thread> threads;
  for (long long c = 0; c < chunks; ++c) {
    const long long b = total * c / chunks;
    const long long e = total * (c + 1) / chunks;
    threads.emplace_back([&work, c, b, e] { work(static_cast<std::size_t>(c), b, e); });
  }
  for (auto& t : threads) t.join();
}

std::size_t chunk_slots() { return std::max(1u, std::min(16u, std::thread::hardware_concurrency())); }

}  // namespace

GridSpec GridSpec::cube(Eigen::Index n, double lo, double hi, int resolution, double eps) {
  GridSpec s;
  s.lo = Vector::Constant(n, lo);
  s.hi = Vector::Constant(n, hi);
  s.resolution = resolution;
  s.eps = eps;
  return s;
}

Vector GridSpec::spacing() const { return (hi - lo) / static_cast<double>(resolution - 1); }

GridSpec GridSpec::scaled(double factor) const {
  GridSpec s = *this;
  const Vector mid = 0.5 * (lo + hi);
  s.lo = mid + factor * (lo - mid);
  s.hi = mid + factor * (hi - mid);
  return s;
}

OracleResult grid_min(const QuadForm& f, const QuadForm& g, const QuadForm& h, const GridSpec& spec) {
  check_dims(f, g, h, spec);
  const int n = static_cast<int>(f.dim());
  const Fast ff(f), gg(g), hh(h);
  const Vector step = spec.spacing();
  const long long total = total_points(n, spec.resolution);
  struct Slot {
    double value = kInf;
    long long index = -1;
    long long count = 0;
  };
  std::vector<Slot> slots(chunk_slots());
  for_each_chunk(total, [&](std::size_t c, long long b, long long e) {
    Slot s;
    double x[kOracleMaxDim];
    for (long long i = b; i < e; ++i) {
      point_at(i, spec, step, x);
      if (gg(x) > spec.eps || hh(x) > spec.eps) continue;
      ++s.count;
      const double v = ff(x);
      if (v < s.value) {
        s.value = v;
        s.index = i;
      }
    }
    slots[c] = s;
  });
  OracleResult out;
  out.spacing = step;
  long long best = -1;
  for (const Slot& s : slots) {
    out.feasible_count += s.count;
    if (s.index < 0) continue;
    if (best < 0 || s.value < out.min_value || (s.value == out.min_value && s.index < best)) {
      out.min_value = s.value;
      best = s.index;
    }
  }
  if (best >= 0) {
    double x[kOracleMaxDim];
    point_at(best, spec, step, x);
    out.argmin = to_vector(x, n);
  }
  return out;
}

double spacing_bound(const QuadForm& f, const OracleResult& r) {
  if (!r.argmin) return 0.0;
  const double diag = r.spacing.norm();
  const double lip = f.gradient(*r.argmin).norm() + spectral_norm(f.A()) * diag;
  return lip * diag;
}

std::optional<Vector> find_witness(const QuadForm& g, const QuadForm& h, SignPattern pattern, const GridSpec& spec,
                                   const WitnessOptions& opt) {
  check_dims(g, g, h, spec);
  const int n = static_cast<int>(g.dim());
  const Fast gg(g), hh(h);
  auto ok = [&](SignKind k, double v) { return k == SignKind::Strict ? v > opt.margin : v >= -opt.margin; };
  auto hit = [&](const double* x) { return ok(pattern.g, gg(x)) && ok(pattern.h, hh(x)); };

  const Vector step = spec.spacing();
  const long long total = total_points(n, spec.resolution);
  std::vector<long long> first(chunk_slots(), -1);
  for_each_chunk(total, [&](std::size_t c, long long b, long long e) {
    double x[kOracleMaxDim];
    for (long long i = b; i < e; ++i) {
      point_at(i, spec, step, x);
      if (hit(x)) {
        first[c] = i;
        return;
      }
    }
  });
  for (long long i : first) {
    if (i < 0) continue;
    double x[kOracleMaxDim];
    point_at(i, spec, step, x);
    return to_vector(x, n);
  }

  std::mt19937_64 rng(opt.seed);
  std::vector<std::uniform_real_distribution<double>> axes;
  for (int i = 0; i < n; ++i) axes.emplace_back(spec.lo(i), spec.hi(i));
  double x[kOracleMaxDim];
  for (long long s = 0; s < opt.samples; ++s) {
    for (int i = 0; i < n; ++i) x[i] = axes[static_cast<std::size_t>(i)](rng);
    if (hit(x)) return to_vector(x, n);
  }
  return std::nullopt;
}

bool s1_empirical(const QuadForm& f, double gamma, const QuadForm& g, const QuadForm& h, const GridSpec& spec,
                  double tol) {
  const OracleResult r = grid_min(f, g, h, spec);
  return !(r.min_value < gamma - tol);
}

UnboundedProbe probe_unbounded(const QuadForm& f, const QuadForm& g, const QuadForm& h, const GridSpec& spec) {
  UnboundedProbe out;
  const OracleResult small = grid_min(f, g, h, spec);
  const GridSpec wide = spec.scaled(8.0);
  const OracleResult big = grid_min(f, g, h, wide);
  out.value_box = small.min_value;
  out.value_enlarged = big.min_value;
  out.point = big.argmin;
  if (!big.argmin) return out;
  const double drop_tol = 1e-6 * (1.0 + std::abs(small.min_value));
  const bool dropped = !small.argmin || big.min_value < small.min_value - drop_tol;
  bool on_boundary = false;
  const Vector step = wide.spacing();
  const Vector grad = f.gradient(*big.argmin);
  for (Eigen::Index i = 0; i < step.size(); ++i) {
    const double x = (*big.argmin)(i);
    if (x <= wide.lo(i) + 0.5 * step(i) && grad(i) > 0.0) on_boundary = true;
    if (x >= wide.hi(i) - 0.5 * step(i) && grad(i) < 0.0) on_boundary = true;
  }
  out.suspected = dropped && on_boundary;
  return out;
}

std::vector<Vector> objective_sublevel_points(const QuadForm& f, double gamma, const GridSpec& spec,
                                              std::size_t max_points) {
  check_dims(f, f, f, spec);
  const int n = static_cast<int>(f.dim());
  const Fast ff(f);
  const Vector step = spec.spacing();
  const long long total = total_points(n, spec.resolution);
  std::vector<Vector> out;
  double x[kOracleMaxDim];
  for (long long i = 0; i < total && out.size() < max_points; ++i) {
    point_at(i, spec, step, x);
    if (ff(x) < gamma) out.push_back(to_vector(x, n));
  }
  return out;
}

}  // namespace nonalter
