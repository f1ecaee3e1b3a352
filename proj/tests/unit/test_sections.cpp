#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bplab/error.hpp"
#include "bplab/sections.hpp"

using namespace bplab;
using std::numbers::pi;

namespace {

bool within(const Estimate& e, double truth, double sigmas = 3.0, double floor = 1e-9) {
  return std::fabs(e.value - truth) <= sigmas * e.err + floor * std::fabs(truth);
}

}  // namespace

TEST_CASE("measures of the Euclidean ball") {
  const RuleSet r = default_rules(3);
  CHECK(measure_of_body(euclidean_ball(3), lebesgue(3), r).value == doctest::Approx(4 * pi / 3).epsilon(1e-12));
  // 4 pi int_0^1 r^2 e^{-r^2/2} dr
  const double gauss_ball = 4 * pi * (std::sqrt(pi / 2) * std::erf(1 / std::sqrt(2.0)) - std::exp(-0.5));
  CHECK(measure_of_body(euclidean_ball(3), gaussian(3), r).value == doctest::Approx(gauss_ball).epsilon(1e-10));
  const Vec e3{0, 0, 1};
  CHECK(section_measure(euclidean_ball(3), gaussian(3), e3, r).value ==
        doctest::Approx(2 * pi * (1 - std::exp(-0.5))).epsilon(1e-10));
  CHECK(section_volume(euclidean_ball(3), e3, r).value == doctest::Approx(pi).epsilon(1e-12));
  CHECK(volume_of_body(euclidean_ball(4), r.sphere).value == doctest::Approx(pi * pi / 2).epsilon(1e-12));
}

TEST_CASE("cube sections and volume") {
  const RuleSet r = default_rules(3);
  CHECK(within(section_volume(cube(3), Vec{0, 0, 1}, r), 4.0));
  const Vec diag{1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0};
  CHECK(within(section_volume(cube(3), diag, r), 4 * std::sqrt(2.0)));
  CHECK(within(volume_of_body(cube(3), r.sphere), 8.0));
  // Gaussian measure of the square [-1,1]^2 in the plane x3 = 0.
  const double square = 2 * pi * std::pow(std::erf(1 / std::sqrt(2.0)), 2);
  CHECK(within(section_measure(cube(3), gaussian(3), Vec{0, 0, 1}, r), square));
  // Gaussian measure of the cube.
  CHECK(within(measure_of_body(cube(3), gaussian(3), r), std::pow(std::sqrt(2 * pi) * std::erf(1 / std::sqrt(2.0)), 3)));
}

TEST_CASE("Cauchy measure of a large ball") {
  // mu(10 B_5) for 1/(1+|x|^2): |S^4| int_0^10 r^4/(1+r^2) = (8 pi^2 / 3)(t^3/3 - t + arctan t)
  const RuleSet r = default_rules(5);
  const double t = 10.0;
  const double want = 8 * pi * pi / 3 * (t * t * t / 3 - t + std::atan(t));
  CHECK(measure_of_body(euclidean_ball(5, t), cauchy(5, 2.0), r).value == doctest::Approx(want).epsilon(1e-9));
  const double sec = 2 * pi * pi * (t * t - std::log(1 + t * t)) / 2;
  CHECK(section_measure(euclidean_ball(5, t), cauchy(5, 2.0), unit_vector(5, 4), r).value ==
        doctest::Approx(sec).epsilon(1e-9));
}

TEST_CASE("query overloads agree") {
  const RuleSet r = default_rules(4);
  const SectionQuery q{lp_ball(4, 3.0), gaussian(4), normalized(std::vector<double>{1, 2, 3, 4}), r};
  CHECK(section_measure(q).value == section_measure(q.body, q.density, q.direction, r).value);
  CHECK(measure_of_body(q).value == measure_of_body(q.body, q.density, r).value);
}

TEST_CASE("max section") {
  const RuleSet r = default_rules(3);
  const MaxSection m = max_section(lebesgue(3), cube(3), r, 50, 1);
  CHECK(m.candidates.size() == 50);
  CHECK(m.value.value >= 4.0 - 3 * m.value.err);
  CHECK(m.value.value <= 4 * std::sqrt(2.0) + 3 * m.value.err);
}

TEST_CASE("complex sections") {
  const RuleSet r = default_rules(4);
  const ComplexDirection cd = complex_direction(normalized(std::vector<double>{1, -1, 2, 0.5}));
  // H_xi cap B_2^4 is a unit disk.
  CHECK(complex_section_measure(euclidean_ball(4), lebesgue(4), cd, r).value == doctest::Approx(pi).epsilon(1e-12));
  CHECK(complex_section_measure(euclidean_ball(4), gaussian(4), cd, r).value ==
        doctest::Approx(2 * pi * (1 - std::exp(-0.5))).epsilon(1e-10));
  CHECK(complex_measure_of_body(euclidean_ball(4), lebesgue(4), r).value == doctest::Approx(pi * pi / 2).epsilon(1e-12));
  CHECK_THROWS_AS(complex_section_measure(lp_ball(4, 3.0), lebesgue(4), cd, r), ConfigError);
  CHECK_THROWS_AS(complex_section_measure(euclidean_ball(4), gaussian(4, {1, 2, 1, 2}), cd, r), ConfigError);
}

TEST_CASE("dimension mismatch") {
  CHECK_THROWS_AS(measure_of_body(cube(3), gaussian(4), default_rules(3)), ConfigError);
}
