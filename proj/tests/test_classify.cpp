#include "doctest.h"
#include "helpers.hpp"

#include "nonalter/classify.hpp"
#include "nonalter/oracle.hpp"

using namespace nonalter;
using th::poly1;
using th::poly2;
using th::vec;

namespace {

const QuadForm kHyperbola = poly2(-1, 0, 1, 0, 0, 9);     // -x^2 + y^2 + 9
const QuadForm kLine = poly2(0, 0, 0, -1, 0, 1);          // 1 - x
const QuadForm kOuter = poly2(1, 0, -1, 0, 0, -49);       // x^2 - y^2 - 49
const QuadForm kDisk = poly2(1, 0, 1, 0, 0, -1);          // x^2 + y^2 - 1
const QuadForm kShifted = poly2(1, 0, 1, -1, 0, -0.75);   // (x-0.5)^2 + y^2 - 1
const QuadForm kStrip = poly2(-1, 0, 0, 0, 0, 1);         // 1 - x^2

bool certified_status(InclusionStatus s) {
  return s == InclusionStatus::CertifiedPencil || s == InclusionStatus::CertifiedVacuous ||
         s == InclusionStatus::CertifiedRestriction;
}

}  // namespace

TEST_CASE("two-sided Slater") {
  auto s = slater_two_sided(kDisk);
  CHECK(s.takes_negative);
  CHECK(s.takes_positive);
  s = slater_two_sided(poly2(1, 0, 0, 0, 0, 0));
  CHECK_FALSE(s.takes_negative);
  CHECK(s.takes_positive);
  s = slater_two_sided(QuadForm::constant(2, -1));
  CHECK(s.takes_negative);
  CHECK_FALSE(s.takes_positive);
}

TEST_CASE("hyperplane separation") {
  const auto cert = detect_separation_by_hyperplane(kHyperbola, kLine);
  REQUIRE(cert);
  CHECK(cert->restriction_nonneg.verdict != PsdVerdict::Indefinite);
  CHECK(kHyperbola(cert->witness_minus) < 0);
  CHECK(kHyperbola(cert->witness_plus) < 0);
  CHECK(kLine(cert->witness_minus) < 0);
  CHECK(kLine(cert->witness_plus) > 0);
  CHECK(std::abs(cert->affine_pattern(1)) > 0);
  CHECK_FALSE(detect_separation_by_hyperplane(kHyperbola, poly2(0, 0, 0, 0, 1, 0)));
  CHECK_FALSE(detect_separation_by_hyperplane(kDisk, kLine));
}

TEST_CASE("pencil search") {
  auto lam = pencil_psd_search(poly1(1, 0, 0), poly1(-1, 0, 0));
  REQUIRE(lam);
  CHECK(*lam == 0.0);
  lam = pencil_psd_search(-kOuter, kHyperbola);
  REQUIRE(lam);
  CHECK(*lam == doctest::Approx(-1).epsilon(1e-9));
  CHECK_FALSE(pencil_psd_search(poly2(0, 0, 0, 1, 0, 0), poly2(0, 0, 0, 0, 1, 0)));
}

TEST_CASE("minimum eigenvalue of a pencil is concave") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int t = 0; t < 100; ++t) {
    const Matrix P = th::random_sym(rng, 3);
    const Matrix Q = th::random_sym(rng, 3);
    double l[3] = {u(rng), u(rng), u(rng)};
    std::sort(l, l + 3);
    auto me = [&](double x) { return Eigen::SelfAdjointEigenSolver<Matrix>(P + x * Q).eigenvalues()(0); };
    const double w = (l[1] - l[0]) / (l[2] - l[0]);
    CHECK(me(l[1]) >= (1 - w) * me(l[0]) + w * me(l[2]) - 1e-8);
  }
}

TEST_CASE("zero-set inclusion") {
  auto v = check_inclusion_zeroset(kHyperbola, kOuter, 1);
  CHECK(v.status == InclusionStatus::CertifiedPencil);
  CHECK(v.lambda == doctest::Approx(-1).epsilon(1e-9));
  v = check_inclusion_zeroset(kHyperbola, kLine, 1);
  REQUIRE(v.status == InclusionStatus::RefutedWitness);
  CHECK(std::abs(kHyperbola(*v.witness)) < 1e-8);
  CHECK(kLine(*v.witness) > 0);
  CHECK(v.violation == doctest::Approx(kLine(*v.witness)));
  v = check_inclusion_zeroset(kHyperbola, QuadForm::constant(2, -1), 1);
  CHECK(v.status == InclusionStatus::CertifiedPencil);
  CHECK(v.lambda == 0.0);
  v = check_inclusion_zeroset(poly2(1, 0, 0, 0, 0, 1), poly2(0, 0, 0, 0, -1, 1), 1);
  CHECK(v.status == InclusionStatus::CertifiedVacuous);
  v = check_inclusion_zeroset(kLine, kHyperbola, -1);
  CHECK(v.status == InclusionStatus::CertifiedRestriction);
  v = check_inclusion_zeroset(kLine, kHyperbola, 1);
  CHECK(v.status == InclusionStatus::RefutedWitness);
}

TEST_CASE("every certificate is sound") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const QuadForm g = th::random_quad(rng, 2);
    const QuadForm h = th::random_quad(rng, 2);
    ClassifyOptions opt;
    opt.search.samples = 2000;
    for (int s : {1, -1}) {
      const auto v = check_inclusion_zeroset(g, h, s, opt);
      if (v.status == InclusionStatus::CertifiedPencil) {
        CHECK(nonneg_everywhere(-(static_cast<double>(s) * h) + v.lambda * g));
      } else if (v.status == InclusionStatus::RefutedWitness) {
        CHECK(s * h(*v.witness) > opt.tol.residual * (1 + h.coeff_scale()));
        CHECK(std::abs(g(*v.witness)) <= 1e-8 * (1 + g.coeff_scale() * (1 + v.witness->squaredNorm())));
      }
    }
  }
}

TEST_CASE("assumption 2") {
  CHECK(check_assumption2(kHyperbola, kOuter).verdict.verdict == Tri::Holds);
  CHECK(check_assumption2(kHyperbola, kLine).verdict.verdict == Tri::Fails);
  const auto cdt = check_assumption2(kDisk, kShifted);
  CHECK(cdt.verdict.verdict == Tri::Fails);
  CHECK(cdt.inclusions[2].status == InclusionStatus::RefutedWitness);
  CHECK(cdt.inclusions[3].status == InclusionStatus::RefutedWitness);
}

TEST_CASE("assumption 1") {
  CHECK(check_assumption1(kDisk, QuadForm::constant(2, -1)).verdict == Tri::Holds);
  const auto s5 = check_assumption1(kDisk, kStrip);
  CHECK(s5.verdict == Tri::Fails);
  REQUIRE(s5.witness);
  CHECK(std::abs(kDisk(*s5.witness)) < 1e-8);
  CHECK(kStrip(*s5.witness) > 0);
  CHECK(check_assumption1(kDisk, poly2(0, 0, 0, -1, 0, 1)).verdict == Tri::Fails);
}

TEST_CASE("assumption 3") {
  const auto ok = check_assumption3(kHyperbola, kOuter);
  CHECK(ok.verdict == Tri::Holds);
  CHECK(check_assumption3(kDisk, QuadForm::constant(2, -1)).verdict == Tri::Fails);
  CHECK(check_assumption3(QuadForm::constant(2, 1), kDisk).verdict == Tri::Fails);
  CHECK(check_assumption3(kDisk, poly2(-1, 0, -1, 0, 0, 4)).verdict == Tri::Fails);
}

TEST_CASE("assumption 5") {
  CHECK(check_assumption5(poly1(-1, 0, 1), poly1(0, 1, -1)).verdict == Tri::Fails);
  CHECK(check_assumption5(poly1(-1, 0, 1), poly1(0, 1, -2)).verdict == Tri::Holds);
  CHECK(check_assumption5(poly1(-1, 0, 1), poly1(0, -1, -1)).verdict == Tri::Fails);
  CHECK(check_assumption5(kHyperbola, kLine).verdict == Tri::Holds);
}

TEST_CASE("problem classes") {
  auto r = classify_problem(poly2(1, 0, 3, 0, 0, -16), poly2(-2, 0, -1, 0, 0, 4));
  CHECK(r.overall == OverallClass::NonAlter);
  CHECK(r.in_non_alter == Tri::Holds);
  r = classify_problem(kDisk, kShifted);
  CHECK(r.overall == OverallClass::OutsideNonAlter);
  r = classify_problem(poly1(0, 1, -1), poly1(0, -2, 0.5));
  CHECK(r.overall == OverallClass::AffinePairReduction);
  REQUIRE(r.reduction);
  CHECK(r.reduction->kind == ReductionKind::ProductConstraint);
  const QuadForm& prod = *r.reduction->pieces[0].constraint;
  CHECK(prod(vec({0.25})) == doctest::Approx(0).scale(1));
  CHECK(prod(vec({1.0})) == doctest::Approx(0).scale(1));
  CHECK(prod(vec({0.5})) < 0);
  CHECK(prod(vec({2.0})) > 0);

  r = classify_problem(poly1(-1, 0, 1), poly1(0, 1, -1));
  CHECK(r.overall == OverallClass::Assumption5Degenerate);
  REQUIRE(r.reduction);
  CHECK(r.reduction->pieces.size() == 2);

  r = classify_problem(poly1(1, 0, -1), QuadForm::constant(1, -1));
  CHECK(r.overall == OverallClass::ReducesToQP1QC);
  r = classify_problem(poly1(1, 0, 1), poly1(0, 1, 0));
  CHECK(r.overall == OverallClass::Infeasible);
  r = classify_problem(poly2(1, 0, 0, 0, 0, 0), poly2(0, 0, 1, 0, 0, -1));
  CHECK(r.overall == OverallClass::ReducesToQP1QC);
  REQUIRE(r.reduction);
  CHECK(r.reduction->kind == ReductionKind::SubspaceRestriction);
}

TEST_CASE("NonAlter pairs admit no point with g > 0, h >= 0 or g >= 0, h > 0") {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> u(0, 1);
  int nonalter = 0;
  for (int t = 0; t < 60; ++t) {
    const QuadForm q = th::random_quad(rng, 2);
    const double lo = -2 + 2 * u(rng), hi = lo + 0.5 + 3 * u(rng);
    const QuadForm g = q + QuadForm::constant(2, -hi);
    QuadForm h = QuadForm::constant(2, lo) - q;
    if (t % 2) h = (0.5 + u(rng)) * h + 0.2 * th::random_quad(rng, 2, -1, 1);
    if (classify_problem(g, h).overall != OverallClass::NonAlter) continue;
    ++nonalter;
    const GridSpec grid = GridSpec::cube(2, -10, 10, 201);
    WitnessOptions w;
    w.samples = 5000;
    w.seed = static_cast<std::uint64_t>(t);
    INFO(t);
    CHECK_FALSE(find_witness(g, h, {SignKind::Strict, SignKind::Weak}, grid, w));
    CHECK_FALSE(find_witness(g, h, {SignKind::Weak, SignKind::Strict}, grid, w));
  }
  CHECK(nonalter >= 20);
}

TEST_CASE("a certified zero-set inclusion rules out hyperplane separation") {
  std::mt19937_64 rng(98);
  std::uniform_real_distribution<double> u(-3, 3);
  int certified = 0, separated = 0;
  for (int t = 0; t < 150; ++t) {
    const QuadForm g = th::random_quad(rng, 2);
    const QuadForm h = QuadForm::affine(vec({u(rng), u(rng)}), u(rng));
    const auto a2 = check_assumption2(g, h);
    const bool sep = detect_separation_by_hyperplane(g, h).has_value();
    separated += sep;
    if (certified_status(a2.inclusions[0].status) || certified_status(a2.inclusions[1].status)) {
      ++certified;
      INFO(t);
      CHECK_FALSE(sep);
    }
  }
  CHECK(certified >= 10);
  CHECK(separated >= 10);
}
