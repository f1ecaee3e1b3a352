#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bplab/error.hpp"
#include "bplab/experiments.hpp"

using namespace bplab;
using std::numbers::pi;

namespace {

PiecewiseConstant constant_alpha(double value, double end) { return {{0.0, end}, {value}}; }

const BoundVerdict* find_bound(const ExperimentReport& r, const std::string& name) {
  for (const auto& b : r.bounds)
    if (b.name == name) return &b;
  return nullptr;
}

}  // namespace

TEST_CASE("c_n") {
  CHECK(cn_constant(2) == doctest::Approx(std::sqrt(pi) / 2).epsilon(1e-14));
  CHECK(cn_constant(3) == doctest::Approx(std::pow(4 * pi / 3, 2.0 / 3) / pi).epsilon(1e-14));
  CHECK(std::fabs(cn_constant(3) - 0.82718) <= 1e-3);
  for (std::size_t n = 2; n <= 50; ++n) CHECK(cn_constant(n) < 1.0);
  CHECK_THROWS_AS(cn_constant(1), InputDomainError);
}

TEST_CASE("elementary lemma instances") {
  const PiecewiseConstant one = constant_alpha(1.0, 10.0);
  auto [l1, r1] = lemma_sides(1.0, 1.0, 2.0, one, 1, 1, 0);
  CHECK(l1 == doctest::Approx(-0.5));
  CHECK(r1 == doctest::Approx(0.0));
  auto [l2, r2] = lemma_sides(1.0, 1.0, 2.0, one, 2, 3, 1);
  CHECK(l2 == doctest::Approx(-0.25));
  CHECK(r2 == doctest::Approx(2.0));
  // a^2 int_1^2 t dt = 1.5 <= int_1^2 t^3 dt = 3.75
  CHECK(one.moment(1, 2.0) - one.moment(1, 1.0) == doctest::Approx(1.5));
  CHECK(one.moment(3, 2.0) - one.moment(3, 1.0) == doctest::Approx(3.75));
  auto [l3, r3] = lemma_sides(0.7, 1.3, 1.3, PiecewiseConstant{{0, 0.5, 2}, {1, 0.25}}, 1, 4, 3);
  CHECK(l3 == r3);
}

TEST_CASE("lemma property suites") {
  const LemmaCheck a = lemma_elementary_property(5, 10000, 1);
  CHECK(a.trials == 10000);
  CHECK(a.violations == 0);
  const LemmaCheck b = lemma_elemcomp_property(3, 10000, 2);
  CHECK(b.violations == 0);
  CHECK_THROWS_AS(lemma_elementary_property(1, 10, 1), InputDomainError);
}

TEST_CASE("match_scale") {
  const SphereRule r = subsphere_rule(Vec{0, 0, 1}, SphereRuleSpec{SphereMethod::product_gauss, 128, 1}).rule;
  // Lebesgue disk area pi s^2 / 2 ... in polar form int rho^{k+1}/(k+1): target pi * 4 gives s = 2.
  CHECK(match_scale(euclidean_ball(3), lebesgue(3), r, 1, 4 * pi, 1e-12) == doctest::Approx(2.0).epsilon(1e-12));
  // Gaussian: 2 pi (1 - e^{-s^2/2}) = pi gives s = sqrt(2 ln 2).
  CHECK(match_scale(euclidean_ball(3), gaussian(3), r, 1, pi, 1e-12) ==
        doctest::Approx(std::sqrt(2 * std::log(2.0))).epsilon(1e-10));
  // Out of reach: total Gaussian mass of the plane is 2 pi.
  CHECK(std::isinf(match_scale(euclidean_ball(3), gaussian(3), r, 1, 3 * pi, 1e-12)));
}

TEST_CASE("bp_check examples") {
  const BpOptions given{false};
  const ExperimentReport same = bp_check(lebesgue(3), euclidean_ball(3), euclidean_ball(3), 50, default_rules(3), 1, given);
  CHECK(same.domination == DominationVerdict::verified);
  CHECK(same.results["ratio"].get<double>() == doctest::Approx(1.0));
  CHECK(same.passed);
  REQUIRE(find_bound(same, "sqrt_n"));
  CHECK(find_bound(same, "one"));  // ellipsoid family: intersection body

  const ExperimentReport gc = bp_check(gaussian(3), euclidean_ball(3), cube(3), 50, default_rules(3), 2, given);
  CHECK(gc.domination == DominationVerdict::verified);
  CHECK(gc.results["ratio"].get<double>() < 1.0);
  CHECK(gc.table.rows.size() == 50);
  CHECK(gc.table.columns.size() == 3 + 5);

  // The reverse pair violates domination.
  const ExperimentReport bad = bp_check(gaussian(3), cube(3), euclidean_ball(3), 50, default_rules(3), 2, given);
  CHECK(bad.domination == DominationVerdict::violated);
  CHECK(bad.bounds.empty());
  CHECK(bad.passed);

  // Constructed domination shrinks K until it is tight.
  const ExperimentReport built = bp_check(cauchy(4, 5.0), lp_ball(4, 4.0), lp_ball(4, 1.5), 40, default_rules(4), 3);
  CHECK(built.domination == DominationVerdict::verified);
  CHECK(built.results["scale"].get<double>() < 1.0);
  CHECK(built.results["max_excess_sigma"].get<double>() <= 1e-6);
  REQUIRE(find_bound(built, "lp_lewis"));
  CHECK(find_bound(built, "lp_lewis")->bound == doctest::Approx(std::pow(4.0, 0.25)));
  CHECK(built.passed);

  CHECK_THROWS_AS(bp_check(gaussian(3), lp_ball(3, 0.5), cube(3), 10, default_rules(3), 1), InputDomainError);
}

TEST_CASE("bp_check with a zonal certificate") {
  const StarBody k = zonal_body(Vec{0, 0, 1}, lp_revolution_profile(4, 1.0, 1.2), true);
  const ExperimentReport r = bp_check(gaussian(3), k, cube(3), 60, default_rules(3), 4);
  CHECK(r.domination == DominationVerdict::verified);
  REQUIRE(find_bound(r, "one"));
  CHECK(find_bound(r, "one")->holds);
  CHECK(r.results["zonal_certificate"]["verdict"] == "certified_positive");
}

TEST_CASE("complex_bp_check examples") {
  const BpOptions given{false};
  const ExperimentReport same =
      complex_bp_check(lebesgue(4), euclidean_ball(4), euclidean_ball(4), 30, default_rules(4), 1, given);
  CHECK(same.results["ratio"].get<double>() == doctest::Approx(1.0));
  REQUIRE(find_bound(same, "two_n"));
  CHECK(find_bound(same, "two_n")->bound == 4.0);
  const ExperimentReport gc =
      complex_bp_check(gaussian(4), euclidean_ball(4), complex_lp_ball(2, INFINITY), 30, default_rules(4), 1, given);
  CHECK(gc.domination == DominationVerdict::verified);
  CHECK(gc.results["ratio"].get<double>() < 1.0);
  const ExperimentReport sym =
      complex_bp_check(gaussian(4, {1, 2, 1, 2}), euclidean_ball(4), complex_lp_ball(2, 2.0), 8, default_rules(4), 1);
  CHECK(sym.config["symmetrized_density"] == true);
  CHECK_THROWS_AS(complex_bp_check(gaussian(4), lp_ball(4, 3.0), euclidean_ball(4), 8, default_rules(4), 1), ConfigError);
}

TEST_CASE("intersection body evidence") {
  CHECK(intersection_body_evidence(lp_ball(4, 1.5)));
  CHECK(intersection_body_evidence(ellipsoid_from_semi_axes({1, 2, 3})));
  Eigen::MatrixXd t = Eigen::MatrixXd::Identity(3, 3);
  t(0, 2) = 0.5;
  CHECK(intersection_body_evidence(linear_image(lp_ball(3, 1.0), t)));
  CHECK_FALSE(intersection_body_evidence(cube(3)));
  CHECK_FALSE(intersection_body_evidence(lp_ball(3, 4.0)));
}

TEST_CASE("random bodies are convex and seeded") {
  Rng a(11), b(11);
  for (int i = 0; i < 20; ++i) {
    const StarBody x = random_convex_body(4, a);
    const StarBody y = random_convex_body(4, b);
    CHECK(x.convex());
    CHECK(x.describe() == y.describe());
  }
  Rng c(3);
  for (int i = 0; i < 10; ++i) CHECK(random_complex_body(3, c).r_theta_invariant());
}

TEST_CASE("hyperplane study") {
  const HyperplaneStudy h = hyperplane_study(lebesgue(3), euclidean_ball(3), default_rules(3), 20, 1);
  CHECK(h.ratio_sqrtn == doctest::Approx((4 * pi / 3) / (pi * std::cbrt(4 * pi / 3))).epsilon(1e-10));
  CHECK(h.bound == doctest::Approx(std::sqrt(3.0) * 1.5 * cn_constant(3)));
  CHECK(h.holds);
  const HyperplaneStudy g = hyperplane_study(gaussian(3), cube(3), default_rules(3), 20, 1);
  CHECK(g.holds);
  CHECK(g.bob_assertable);
  CHECK_FALSE(hyperplane_study(cauchy(3, 1.0), cube(3), default_rules(3), 10, 1).bob_assertable);
}

TEST_CASE("counterexample scan") {
  const CounterexampleScan s = counterexample_scan(5, 2.0, {10.0, 100.0, 1000.0}, default_rules(5));
  REQUIRE(s.rows.size() == 3);
  const double t = 10.0;
  CHECK(s.rows[0].section.value == doctest::Approx(pi * pi * (t * t - std::log(1 + t * t))).epsilon(1e-9));
  CHECK(s.rows[0].mu.value == doctest::Approx(8 * pi * pi / 3 * (t * t * t / 3 - t + std::atan(t))).epsilon(1e-9));
  CHECK(s.rows[0].ratio_bob == doctest::Approx(0.673).epsilon(0.02));
  CHECK(s.rows[1].ratio_bob == doctest::Approx(0.274).epsilon(0.02));
  CHECK(s.strictly_decreasing);
  CHECK(s.tail_slope == doctest::Approx(-0.4).epsilon(0.05));
  CHECK(s.expected_slope == doctest::Approx(-0.4));
  CHECK_THROWS_AS(counterexample_scan(3, 3.0, {1.0}, default_rules(3)), InputDomainError);
  CHECK_THROWS_AS(counterexample_scan(3, 1.0, {2.0, 1.0}, default_rules(3)), InputDomainError);
}

TEST_CASE("constant-section bodies") {
  const ConstantSection g = constant_section_body(gaussian(3), pi, default_rules(3));
  CHECK(g.admissible);
  CHECK(g.capacity == doctest::Approx(2 * pi).epsilon(1e-9));
  CHECK(std::fabs(g.t - std::sqrt(2 * std::log(2.0))) <= 1e-6);
  CHECK(g.holds);
  const ConstantSection l = constant_section_body(lebesgue(3), pi, default_rules(3));
  CHECK(std::isinf(l.capacity));
  CHECK(l.t == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(l.holds);
  CHECK_FALSE(constant_section_body(gaussian(3), 3 * pi, default_rules(3)).admissible);
  CHECK_THROWS_AS(constant_section_body(gaussian(3, {1, 2, 1}), 1.0, default_rules(3)), InputDomainError);
  // Lebesgue ball in higher dimension: the inequality is tight up to the Holder step.
  for (std::size_t n = 4; n <= 6; ++n) CHECK(constant_section_body(lebesgue(n), 1.0, default_rules(n)).holds);
}

TEST_CASE("reports") {
  const ExperimentReport r = counterexample_report(5, 2.0, {10.0, 100.0}, default_rules(5));
  CHECK(r.experiment == "counterexample");
  CHECK(r.table.rows.size() == 2);
  CHECK(r.passed);
  const ExperimentReport c = const_section_report(gaussian(3), 3 * pi, default_rules(3));
  CHECK(c.results["admissible"] == false);
  CHECK(c.bounds.empty());
}
