#include "doctest.h"
#include "helpers.hpp"

#include "nonalter/oracle.hpp"

using namespace nonalter;
using th::poly2;
using th::vec;

namespace {

const QuadForm kMinusOne = QuadForm::constant(2, -1);
const QuadForm kNorm = poly2(1, 0, 1, 0, 0, 0);

}  // namespace

TEST_CASE("grid minimum of the unit disk") {
  const auto r = grid_min(kNorm, poly2(1, 0, 1, 0, 0, -1), kMinusOne, GridSpec::cube(2, -2, 2, 401));
  CHECK(r.min_value == doctest::Approx(0).scale(1));
  REQUIRE(r.argmin);
  CHECK(r.argmin->norm() <= r.spacing.norm());
  CHECK(r.feasible_count > 0);
}

TEST_CASE("grid minimum on a two-point feasible set") {
  const QuadForm f = poly2(1, 0, -1, 0, 0, 0);
  const QuadForm g = poly2(1, 0, 1, 0, 0, -1);
  const QuadForm h = poly2(-1, 0, 0, 0, 0, 1);
  auto r = grid_min(f, g, h, GridSpec::cube(2, -2, 2, 801, 1e-3));
  CHECK(r.min_value == doctest::Approx(1).epsilon(1e-2));
  REQUIRE(r.argmin);
  CHECK(std::abs(std::abs((*r.argmin)(0)) - 1) < 0.02);
  r = grid_min(f, g, h, GridSpec::cube(2, -2, 2, 800, 1e-12));
  CHECK(r.feasible_count == 0);
  CHECK(r.min_value == kInf);
}

TEST_CASE("grid minimum between two ellipses") {
  const QuadForm g = poly2(1, 0, 3, 0, 0, -16);
  const QuadForm h = poly2(-2, 0, -1, 0, 0, 4);
  const auto r = grid_min(kNorm, g, h, GridSpec::cube(2, -10, 10, 801));
  CHECK(r.min_value >= 2 - 1e-6);
  CHECK(r.min_value <= 2 + spacing_bound(kNorm, r));
  REQUIRE(r.argmin);
  CHECK(std::abs(std::abs((*r.argmin)(0)) - std::sqrt(2.0)) < 0.1);
}

TEST_CASE("lexicographic tie-break and determinism") {
  const QuadForm f = poly2(1, 0, 0, 0, 0, 0);
  const auto r1 = grid_min(f, kMinusOne, kMinusOne, GridSpec::cube(2, -1, 1, 5));
  const auto r2 = grid_min(f, kMinusOne, kMinusOne, GridSpec::cube(2, -1, 1, 5));
  REQUIRE(r1.argmin);
  CHECK((*r1.argmin)(0) == 0.0);
  CHECK((*r1.argmin)(1) == -1.0);
  CHECK(*r1.argmin == *r2.argmin);
  CHECK(r1.min_value == r2.min_value);
}

TEST_CASE("refinement never raises the minimum beyond the spacing bound") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const QuadForm f = th::random_quad(rng, 2);
    const QuadForm g = th::random_quad(rng, 2);
    const QuadForm h = th::random_quad(rng, 2);
    const auto coarse = grid_min(f, g, h, GridSpec::cube(2, -5, 5, 101));
    const auto fine = grid_min(f, g, h, GridSpec::cube(2, -5, 5, 201));
    if (!coarse.argmin || !fine.argmin) continue;
    CHECK(fine.min_value <= coarse.min_value + spacing_bound(f, coarse) + 1e-9);
  }
}

TEST_CASE("sign-pattern witnesses") {
  const GridSpec spec = GridSpec::cube(2, -10, 10, 201);
  const QuadForm disk = poly2(1, 0, 1, 0, 0, -1);
  const QuadForm shifted = poly2(1, 0, 1, -1, 0, -0.75);
  const auto w = find_witness(disk, shifted, {SignKind::Strict, SignKind::Strict}, spec);
  REQUIRE(w);
  CHECK(disk(*w) > 0);
  CHECK(shifted(*w) > 0);
  const QuadForm g = poly2(-1, 0, 1, 0, 0, 9);
  const QuadForm h = poly2(1, 0, -1, 0, 0, -49);
  CHECK_FALSE(find_witness(g, h, {SignKind::Strict, SignKind::Weak}, spec));
  CHECK_FALSE(find_witness(kMinusOne, disk, {SignKind::Strict, SignKind::Weak}, spec));
  WitnessOptions opt;
  opt.seed = 3;
  CHECK(find_witness(disk, shifted, {SignKind::Weak, SignKind::Weak}, spec, opt) ==
        find_witness(disk, shifted, {SignKind::Weak, SignKind::Weak}, spec, opt));
}

TEST_CASE("empirical implication") {
  const QuadForm g = poly2(1, 0, 3, 0, 0, -16);
  const QuadForm h = poly2(-2, 0, -1, 0, 0, 4);
  const GridSpec spec = GridSpec::cube(2, -10, 10, 401);
  CHECK(s1_empirical(kNorm, 1.9, g, h, spec));
  CHECK_FALSE(s1_empirical(kNorm, 2.1, g, h, spec));
  CHECK(s1_empirical(kNorm, -5, g, h, spec));
  CHECK(s1_empirical(-1.0 * kNorm, 0, QuadForm::constant(2, 1), h, spec));
}

TEST_CASE("unboundedness probe") {
  const GridSpec spec = GridSpec::cube(2, -10, 10, 101);
  auto p = probe_unbounded(poly2(-1, 0, 0, 0, 0, 0), poly2(0, 0, 1, 0, 0, -1), kMinusOne, spec);
  CHECK(p.suspected);
  p = probe_unbounded(kNorm, poly2(0, 0, 1, 0, 0, -1), kMinusOne, spec);
  CHECK_FALSE(p.suspected);
  p = probe_unbounded(poly2(1, 0, 0, -30, 0, 0), kMinusOne, kMinusOne, spec);
  CHECK_FALSE(p.suspected);
}

TEST_CASE("objective sublevel points") {
  const auto pts = objective_sublevel_points(kNorm, 1.0, GridSpec::cube(2, -2, 2, 41));
  CHECK(!pts.empty());
  for (const Vector& x : pts) CHECK(kNorm(x) < 1.0);
}

TEST_CASE("oracle input validation") {
  CHECK_THROWS_AS(grid_min(kNorm, kNorm, kNorm, GridSpec::cube(2, 1, -1, 11)), Error);
  CHECK_THROWS_AS(grid_min(kNorm, kNorm, kNorm, GridSpec::cube(2, -1, 1, 2)), Error);
  const QuadForm big = QuadForm::zero(4);
  CHECK_THROWS_AS(grid_min(big, big, big, GridSpec::cube(4, -1, 1, 3)), Error);
}
