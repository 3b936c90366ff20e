// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "helpers.hpp"
#include "nonalter/canonical.hpp"
#include "nonalter/classify.hpp"
#include "nonalter/duality.hpp"
#include "nonalter/nonalter.h"
#include "nonalter/oracle.hpp"
#include "nonalter/qp1qc.hpp"
#include "nonalter/solve.hpp"
#include "problem_io.hpp"

using namespace nonalter;
using th::vec;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string corpus(const std::string& name) { return std::string(NONALTER_CORPUS_DIR) + "/" + name + ".json"; }

io::Problem load(const std::string& name) { return io::load_problem(corpus(name)); }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

GridSpec fine_grid(double eps = 1e-6) { return GridSpec::cube(2, -10, 10, 801, eps); }

double min_eig(const Matrix& A) { return Eigen::SelfAdjointEigenSolver<Matrix>(A).eigenvalues()(0); }

// With A positive definite, every x with f(x) <= value lies in a ball around the
// unconstrained minimizer; true when that ball fits inside the box.
bool sublevel_inside_box(const QuadForm& f, double value, double half_width = 10.0) {
  const double lmin = min_eig(f.A());
  if (lmin <= 1e-9) return false;
  const Vector c = -f.A().ldlt().solve(f.a());
  const double gap = value - f(c);
  if (!std::isfinite(gap)) return false;
  const double r = std::sqrt(std::max(gap, 0.0) / lmin);
  return c.cwiseAbs().maxCoeff() + r < half_width;
}

QuadForm random_pd_objective(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_real_distribution<double> pos(0.3, 2);
  Matrix L(2, 2);
  L << pos(rng), u(rng), 0, pos(rng);
  const Matrix A = L * L.transpose() + 0.1 * Matrix::Identity(2, 2);
  const Vector c = vec({4 * u(rng), 4 * u(rng)});
  return QuadForm(A, -A * c, c.dot(A * c) + 3 * u(rng));
}

struct Instance {
  QuadForm f, g, h;
};

// Seeded random NonAlter pairs with a positive-definite objective whose
// constrained minimizer provably lies in [-10, 10]^2. Candidates cycle through
// interval pairs l <= q <= u, perturbed interval pairs and fully random pairs;
// every candidate must still be classified NonAlter.
struct RandomSet {
  std::vector<Instance> instances;
  int drawn = 0;
  int per_family[3] = {0, 0, 0};
};

RandomSet random_nonalter(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  RandomSet out;
  while (out.instances.size() < count && out.drawn < 20000) {
    const int family = out.drawn++ % 3;
    QuadForm g, h;
    if (family == 2) {
      g = th::random_quad(rng, 2);
      h = th::random_quad(rng, 2);
    } else {
      const QuadForm q = th::random_quad(rng, 2);
      const double lo = -2 + 2 * u(rng), hi = lo + 0.5 + 3 * u(rng);
      g = q + QuadForm::constant(2, -hi);
      h = QuadForm::constant(2, lo) - q;
      if (family == 1) h = (0.5 + 1.5 * u(rng)) * h + 0.2 * th::random_quad(rng, 2, -1, 1);
    }
    const QuadForm f = random_pd_objective(rng);
    if (classify_problem(g, h).overall != OverallClass::NonAlter) continue;
    const OracleResult o = grid_min(f, g, h, fine_grid());
    if (o.feasible_count == 0 || !sublevel_inside_box(f, o.min_value, 9.5)) continue;
    out.instances.push_back({f, g, h});
    ++out.per_family[family];
  }
  return out;
}

Outcome criterion1() {
  Outcome r;
  int ok = 0;
  std::ostringstream bad;
  auto mark = [&](const char* name, bool pass) {
    if (pass) ++ok;
    else bad << " " << name;
  };
  {
    const auto p = load("ex22");
    const auto a2 = check_assumption2(p.g, p.h);
    mark("ex22", a2.verdict.verdict == Tri::Fails && detect_separation_by_hyperplane(p.g, p.h).has_value());
  }
  {
    const auto p = load("ex23");
    const auto rep = classify_problem(p.g, p.h);
    bool all_refuted = true;
    for (const auto& inc : rep.inclusions) all_refuted = all_refuted && inc.status == InclusionStatus::RefutedWitness;
    mark("ex23", all_refuted && rep.overall == OverallClass::OutsideNonAlter);
  }
  {
    const auto p = load("ex24");
    mark("ex24", check_assumption2(p.g, p.h).verdict.verdict == Tri::Holds);
  }
  for (const char* name : {"ex25a", "ex25b"}) {
    const auto p = load(name);
    mark(name, classify_problem(p.g, p.h).in_non_alter == Tri::Holds);
  }
  {
    const auto p = load("cdt_s2");
    mark("cdt_s2", classify_problem(p.g, p.h).overall == OverallClass::OutsideNonAlter);
  }
  {
    const auto p = load("hqpd_s5a");
    mark("hqpd_s5a", check_assumption1(p.g, p.h).verdict == Tri::Fails &&
                         check_assumption2(p.g, p.h).verdict.verdict == Tri::Holds);
  }
  {
    const auto p = load("hqpd_s5b");
    mark("hqpd_s5b", check_assumption1(p.g, p.h).verdict == Tri::Holds &&
                         check_assumption2(p.g, p.h).verdict.verdict == Tri::Fails);
  }
  r.pass = ok == 8;
  r.detail = std::to_string(ok) + "/8 verdicts reproduced";
  if (!r.pass) r.detail += ", mismatched:" + bad.str();
  return r;
}

struct DualCheck {
  double gap = 0;
  double allowed = 0;
};

DualCheck strong_duality_gap(const QuadForm& f, const QuadForm& g, const QuadForm& h) {
  const DualSolveResult d = solve_dual_2d(f, g, h);
  const OracleResult o = grid_min(f, g, h, fine_grid());
  return {std::abs(d.value - o.min_value), 1e-3 + spacing_bound(f, o)};
}

Outcome criterion2(const RandomSet& set) {
  const std::vector<Instance>& random_set = set.instances;
  Outcome r;
  int fails = 0;
  double worst = 0;
  std::ostringstream bad;
  for (const char* name : {"ex25a", "ex25b", "ex24"}) {
    const auto p = load(name);
    const DualCheck c = strong_duality_gap(p.f, p.g, p.h);
    worst = std::max(worst, c.gap / c.allowed);
    if (!(c.gap <= c.allowed)) {
      ++fails;
      bad << " " << name << fmt("(gap %.3g)", c.gap);
    }
  }
  for (std::size_t i = 0; i < random_set.size(); ++i) {
    const Instance& in = random_set[i];
    const DualCheck c = strong_duality_gap(in.f, in.g, in.h);
    worst = std::max(worst, c.gap / c.allowed);
    if (!(c.gap <= c.allowed)) {
      ++fails;
      bad << " random#" << i << fmt("(gap %.3g)", c.gap);
    }
  }
  r.pass = fails == 0 && random_set.size() == 100;
  r.detail = "3 corpus + " + std::to_string(random_set.size()) + " random NonAlter instances (" +
             std::to_string(set.per_family[0]) + " interval, " + std::to_string(set.per_family[1]) +
             " perturbed interval, " + std::to_string(set.per_family[2]) + " generic; " +
             std::to_string(set.drawn) + " drawn), worst gap/allowed " + fmt("%.3g", worst);
  if (fails) r.detail += ", failures:" + bad.str();
  return r;
}

Outcome criterion3() {
  Outcome r;
  std::mt19937_64 rng(303);
  int checked = 0, drawn = 0, violations = 0;
  double worst = -kInf;
  while (checked < 300 && drawn < 5000) {
    ++drawn;
    const QuadForm f = th::random_quad(rng, 2);
    const QuadForm g = th::random_quad(rng, 2);
    const QuadForm h = th::random_quad(rng, 2);
    const OracleResult o = grid_min(f, g, h, fine_grid());
    if (o.feasible_count == 0) continue;
    ++checked;
    const DualSolveResult d = solve_dual_2d(f, g, h);
    const double excess = d.value - (o.min_value + 1e-6 + spacing_bound(f, o));
    if (std::isfinite(excess)) worst = std::max(worst, excess);
    if (excess > 0) ++violations;
  }
  r.pass = checked == 300 && violations == 0;
  r.detail = std::to_string(checked) + " instances with a feasible grid point, " + std::to_string(violations) +
             " violations, largest dual - bound " + fmt("%.3g", worst);
  return r;
}

bool has_witness(const QuadForm& g, const QuadForm& h, SignPattern pat) {
  WitnessOptions w;
  w.samples = 100000;
  w.seed = 41;
  return find_witness(g, h, pat, fine_grid(), w).has_value();
}

Outcome criterion4(const std::vector<Instance>& random_set) {
  Outcome r;
  const SignPattern strict_weak{SignKind::Strict, SignKind::Weak};
  const SignPattern weak_strict{SignKind::Weak, SignKind::Strict};
  std::vector<std::pair<std::string, Instance>> cases;
  for (const char* name : {"ex22", "ex23", "ex24", "ex25a", "ex25b", "cdt_s2", "hqpd_s5a", "hqpd_s5b", "gtrs"}) {
    const auto p = load(name);
    if (classify_problem(p.g, p.h).overall == OverallClass::NonAlter) cases.push_back({name, {p.f, p.g, p.h}});
  }
  const std::size_t corpus_cases = cases.size();
  for (std::size_t i = 0; i < random_set.size(); ++i) cases.push_back({"random#" + std::to_string(i), random_set[i]});
  int found = 0;
  std::ostringstream bad;
  for (const auto& [name, in] : cases) {
    if (has_witness(in.g, in.h, strict_weak) || has_witness(in.g, in.h, weak_strict)) {
      ++found;
      bad << " " << name;
    }
  }
  const auto cdt = load("cdt_s2");
  const bool cdt_found = has_witness(cdt.g, cdt.h, strict_weak);
  r.pass = found == 0 && cdt_found;
  r.detail = std::to_string(corpus_cases) + " corpus + " + std::to_string(random_set.size()) +
             " random instances without a witness";
  if (found) r.detail += ", witnesses on:" + bad.str();
  r.detail += cdt_found ? ", cdt_s2 witness found" : ", cdt_s2 witness missing";
  return r;
}

Outcome criterion5() {
  Outcome r;
  int instances = 0, points = 0;
  std::ostringstream bad;
  for (const char* name : {"ex22", "ex23", "ex24", "ex25a", "ex25b", "cdt_s2", "hqpd_s5a", "hqpd_s5b", "gtrs"}) {
    const auto p = load(name);
    if (classify_problem(p.g, p.h).overall != OverallClass::NonAlter) continue;
    ++instances;
    const SolveReport s = solve_nonalter(p.f, p.g, p.h);
    const double nu = s.nu_star;
    const double floor = unconstrained_min(p.f).value;
    int side = 0;
    bool ok = std::isfinite(nu);
    for (int k = 1; k <= 5 && ok; ++k) {
      const double gamma = std::isfinite(floor) ? floor + (nu - floor) * k / 6.0 : nu - k;
      for (const Vector& x : objective_sublevel_points(p.f, gamma, GridSpec::cube(2, -10, 10, 401))) {
        ++points;
        const double gv = p.g(x), hv = p.h(x);
        const int here = gv < 0 && hv > 0 ? 1 : (gv > 0 && hv < 0 ? 2 : 3);
        if (here == 3 || (side != 0 && here != side)) ok = false;
        side = here;
      }
    }
    if (!ok) bad << " " << name;
  }
  r.pass = instances > 0 && bad.str().empty();
  r.detail = std::to_string(instances) + " NonAlter corpus instances, " + std::to_string(points) +
             " sublevel points over 5 levels each";
  if (!r.pass) r.detail += ", split or boundary points on:" + bad.str();
  return r;
}

Outcome criterion6() {
  Outcome r;
  int hand_ok = 0;
  auto hand = [&](const QuadForm& f, const QuadForm& g, double value, const Vector* x) {
    const Qp1qcResult s = solve_qp1qc(f, g);
    bool ok = s.status == Qp1qcStatus::Attained && std::abs(s.value - value) <= 1e-8;
    if (ok && x) ok = s.x && (*s.x - *x).norm() <= 1e-6;
    if (ok) ++hand_ok;
  };
  const Vector one = vec({1.0});
  hand(th::poly1(1, -4, 4), th::poly1(1, 0, -1), 1.0, &one);
  hand(th::poly2(0, 0, -1, 0, 0, 0), th::poly2(1, 0, 1, 0, 0, -1), -1.0, nullptr);
  const Vector proj = vec({0.6, 0.8});
  hand(th::poly2(1, 0, 1, -6, -8, 25), th::poly2(1, 0, 1, 0, 0, -1), 16.0, &proj);
  const Vector diag = vec({0.5, 0.5});
  hand(th::poly2(1, 0, 1, -2, 0, 0), th::poly2(1, -2, 1, 0, 0, 0), -0.5, &diag);
  const Vector zero = vec({0.0, 0.0});
  hand(th::poly2(1, 0, 1, 0, 0, 0), th::poly2(1, 0, 1, 0, 0, -1), 0.0, &zero);

  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_real_distribution<double> pos(0.3, 2);
  const QuadForm none = QuadForm::constant(2, -1);
  int two_sided = 0, one_sided = 0, unbounded = 0, failures = 0;
  double worst = 0;
  for (int t = 0; t < 300; ++t) {
    QuadForm f, g;
    bool provable = false;
    if (t % 3 == 0) {
      f = th::random_quad(rng, 2);
      Matrix L(2, 2);
      L << pos(rng), u(rng), 0, pos(rng);
      const Matrix P = L * L.transpose() + 0.2 * Matrix::Identity(2, 2);
      const Vector c = vec({3 * u(rng), 3 * u(rng)});
      const double rad = 0.5 + pos(rng);
      g = QuadForm(P, -P * c, c.dot(P * c) - rad * rad);
      provable = c.cwiseAbs().maxCoeff() + rad / std::sqrt(min_eig(P)) < 10;
    } else if (t % 3 == 1) {
      f = random_pd_objective(rng);
      g = th::random_quad(rng, 2);
    } else {
      f = th::random_quad(rng, 2);
      g = th::random_quad(rng, 2);
    }
    const Qp1qcResult s = solve_qp1qc(f, g);
    const OracleResult o = grid_min(f, g, none, fine_grid(0.0));
    const double bound = spacing_bound(f, o);
    auto why = [&](const char* what) {
      ++failures;
      if (std::getenv("ACCEPTANCE_VERBOSE"))
        std::fprintf(stderr, "c6 t=%d %s status=%d value=%.9g oracle=%.9g bound=%.3g note=%s\n", t, what,
                     static_cast<int>(s.status), s.value, o.min_value, bound, s.note.c_str());
    };
    if (s.status == Qp1qcStatus::Infeasible) {
      if (o.feasible_count != 0) why("infeasible");
      continue;
    }
    if (s.status == Qp1qcStatus::UnboundedBelow) {
      ++unbounded;
      double low = o.min_value;
      GridSpec box = fine_grid(0.0);
      for (int k = 0; k < 6 && !(low < -1e6); ++k) {
        box = box.scaled(8.0);
        low = std::min(low, grid_min(f, g, none, box).min_value);
      }
      if (!(low < -1e6)) why("unbounded");
      continue;
    }
    if (o.feasible_count == 0) continue;
    if (!provable) provable = sublevel_inside_box(f, o.min_value);
    if (provable && s.status == Qp1qcStatus::Attained) {
      ++two_sided;
      const double gap = std::abs(s.value - o.min_value);
      worst = std::max(worst, gap / (2 * bound + 1e-12));
      if (!(gap <= 2 * bound)) why("two-sided");
    } else {
      ++one_sided;
      if (!(s.value <= o.min_value + 1e-7 * (1 + std::abs(o.min_value)))) why("one-sided");
    }
  }
  r.pass = hand_ok == 5 && failures == 0;
  r.detail = std::to_string(hand_ok) + "/5 hand cases; 300 random: " + std::to_string(two_sided) +
             " matched within twice the spacing bound (worst ratio " + fmt("%.3g", worst) + "), " +
             std::to_string(unbounded) + " unbounded confirmed below -1e6, " + std::to_string(one_sided) +
             " below the box minimum, " + std::to_string(failures) + " failures";
  return r;
}

// Independent witness that q takes a negative value, built from the eigenvectors of A.
std::optional<Vector> negative_point(const QuadForm& q) {
  const Eigen::SelfAdjointEigenSolver<Matrix> es(q.A());
  const double scale = 1 + q.A().cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) < -1e-9 * scale) {
      const Vector v = es.eigenvectors().col(i);
      for (double t = 1; t < 1e8; t *= 2) {
        for (double sgn : {1.0, -1.0}) {
          const Vector x = sgn * t * v;
          if (q(x) < 0) return x;
        }
      }
    }
  }
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i)) <= 1e-9 * scale) {
      const Vector v = es.eigenvectors().col(i);
      const double slope = q.a().dot(v);
      if (std::abs(slope) > 1e-12) {
        for (double t = 1; t < 1e12; t *= 2) {
          const Vector x = -(slope > 0 ? 1.0 : -1.0) * t * v;
          if (q(x) < 0) return x;
        }
      }
    }
  }
  const Vector x = q.A().completeOrthogonalDecomposition().solve(-q.a());
  if (q(x) < 0) return x;
  return std::nullopt;
}

Outcome criterion7() {
  Outcome r;
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_int_distribution<int> dim(1, 3);
  int roundtrip_fail = 0, nonneg_fail = 0, nonneg_true = 0;
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index n = dim(rng);
    const QuadForm g = th::random_quad(rng, n);
    const CanonicalReduction cr = canonical_reduce(g);
    for (int s = 0; s < 50; ++s) {
      Vector y(n);
      for (Eigen::Index i = 0; i < n; ++i) y(i) = u(rng);
      const double rhs = cr.form.evaluate(y);
      const double err = std::abs(cr.change.s * g(cr.change.apply(y)) - rhs) / (1 + std::abs(rhs));
      worst = std::max(worst, err);
      if (err > 1e-8) {
        ++roundtrip_fail;
        break;
      }
    }
  }
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index n = dim(rng);
    Matrix L = th::random_sym(rng, n, -1, 1);
    if (t % 4 == 0) L.col(0).setZero();
    Matrix A = L * L.transpose();
    if (t % 5 == 0) A = th::random_sym(rng, n);
    Vector a(n);
    for (Eigen::Index i = 0; i < n; ++i) a(i) = u(rng);
    if (t % 4 == 0) a = A * a;
    const QuadForm base(A, a, 0);
    const Vector xm = A.completeOrthogonalDecomposition().solve(-a);
    const QuadForm q(A, a, -base(xm) + u(rng) / 3);
    const bool claimed = nonneg_everywhere(q);
    if (claimed) {
      ++nonneg_true;
      std::uniform_real_distribution<double> box(-10, 10);
      for (int s = 0; s < 10000; ++s) {
        Vector x(n);
        for (Eigen::Index i = 0; i < n; ++i) x(i) = box(rng);
        if (q(x) < -1e-6 * (1 + x.squaredNorm())) {
          ++nonneg_fail;
          break;
        }
      }
    } else if (!negative_point(q)) {
      ++nonneg_fail;
    }
  }
  r.pass = roundtrip_fail == 0 && nonneg_fail == 0;
  r.detail = "round trip worst relative error " + fmt("%.3g", worst) + " over 100 quadratics; nonnegativity " +
             std::to_string(100 - nonneg_fail) + "/100 agree (" + std::to_string(nonneg_true) + " nonnegative)";
  return r;
}

Outcome criterion8() {
  Outcome r;
  const auto p = load("hqpd_s5a");
  const DualSolveResult d = solve_dual_2d(p.f, p.g, p.h);
  const OracleResult o = grid_min(p.f, p.g, p.h, fine_grid(1e-3));
  r.pass = std::abs(d.value - 1) <= 1e-6 && std::abs(o.min_value - 1) <= 1e-2;
  r.detail = "dual " + fmt("%.10g", d.value) + ", oracle " + fmt("%.6g", o.min_value) + " at eps 1e-3";
  return r;
}

Outcome criterion9() {
  Outcome r;
  int same = 0, total = 0;
  for (const char* name : {"ex22", "ex23", "ex24", "ex25a", "ex25b", "cdt_s2", "hqpd_s5a", "hqpd_s5b", "gtrs",
                           "qp1qc_embed"}) {
    na_problem* p = nullptr;
    if (na_problem_load(corpus(name).c_str(), &p) != NA_OK) continue;
    na_options* o = na_options_create();
    na_options_set_seed(o, 11);
    for (auto cmd : {na_classify, na_solve, na_oracle}) {
      na_report* a = nullptr;
      na_report* b = nullptr;
      ++total;
      if (cmd(p, o, &a) == NA_OK && cmd(p, o, &b) == NA_OK &&
          std::string(na_report_json(a)) == std::string(na_report_json(b)))
        ++same;
      na_report_free(a);
      na_report_free(b);
    }
    na_options_free(o);
    na_problem_free(p);
  }
  r.pass = total == 30 && same == total;
  r.detail = std::to_string(same) + "/" + std::to_string(total) + " report pairs byte-identical";
  return r;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const RandomSet random_set = random_nonalter(100, 202);
  std::printf("generated %zu random NonAlter instances in %.1f s\n", random_set.instances.size(),
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 corpus verdicts", criterion1},
      {"2 strong duality", [&] { return criterion2(random_set); }},
      {"3 weak duality", criterion3},
      {"4 incompatible sign systems", [&] { return criterion4(random_set.instances); }},
      {"5 sublevel dichotomy", criterion5},
      {"6 single-constraint solver", criterion6},
      {"7 canonical forms and nonnegativity", criterion7},
      {"8 homogeneous definite-pencil instance", criterion8},
      {"9 determinism", criterion9},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), dt);
    std::fflush(stdout);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(), secs);
  return failed == 0 ? 0 : 1;
}
