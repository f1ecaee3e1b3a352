#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bplab/error.hpp"
#include "bplab/linalg.hpp"
#include "bplab/quadrature.hpp"

using namespace bplab;
using std::numbers::pi;

TEST_CASE("sphere area and ball volume") {
  CHECK(sphere_area(2) == doctest::Approx(2 * pi));
  CHECK(sphere_area(3) == doctest::Approx(4 * pi));
  CHECK(sphere_area(5) == doctest::Approx(8 * pi * pi / 3));
  CHECK(ball_volume(3) == doctest::Approx(4 * pi / 3));
  CHECK(ball_volume(4) == doctest::Approx(pi * pi / 2));
}

TEST_CASE("antithetic rule: weights, symmetry, determinism") {
  const SphereRule r = sphere_rule(3, SphereMethod::antithetic_mc, 1000, 9);
  CHECK(r.size() == 1000);
  CHECK(r.total_weight() == doctest::Approx(4 * pi));
  for (std::size_t i = 0; i < r.size(); i += 2)
    for (std::size_t j = 0; j < 3; ++j) CHECK(r.node(i)[j] == -r.node(i + 1)[j]);
  // Odd integrands vanish exactly.
  const Estimate odd = integrate_sphere([](std::span<const double> t) { return t[0] * t[1] * t[1]; }, r);
  CHECK(odd.value == 0.0);
  const SphereRule again = sphere_rule(3, SphereMethod::antithetic_mc, 1000, 9);
  CHECK(std::equal(r.nodes().begin(), r.nodes().end(), again.nodes().begin()));
  const SphereRule other = sphere_rule(3, SphereMethod::antithetic_mc, 1000, 10);
  CHECK_FALSE(std::equal(r.nodes().begin(), r.nodes().end(), other.nodes().begin()));
}

TEST_CASE("product Gauss rule integrates polynomials exactly") {
  const SphereRule r = sphere_rule(3, SphereMethod::product_gauss, 288, 1);
  CHECK(r.total_weight() == doctest::Approx(4 * pi).epsilon(1e-13));
  // int_{S^2} x^4 = 4 pi / 5, int x^2 y^2 = 4 pi / 15
  const Estimate a = integrate_sphere([](std::span<const double> t) { return std::pow(t[0], 4); }, r);
  CHECK(a.value == doctest::Approx(4 * pi / 5).epsilon(1e-12));
  const Estimate b = integrate_sphere([](std::span<const double> t) { return t[0] * t[0] * t[1] * t[1]; }, r);
  CHECK(b.value == doctest::Approx(4 * pi / 15).epsilon(1e-12));
  CHECK(b.err < 1e-10);
  // S^3: int x1^2 = |S^3| / 4 = pi^2 / 2.
  const SphereRule r4 = sphere_rule(4, SphereMethod::product_gauss, 1024, 1);
  const Estimate c = integrate_sphere([](std::span<const double> t) { return t[0] * t[0]; }, r4);
  CHECK(c.value == doctest::Approx(pi * pi / 2).epsilon(1e-12));
  // Circle
  const SphereRule r2 = sphere_rule(2, SphereMethod::product_gauss, 64, 1);
  const Estimate d = integrate_sphere([](std::span<const double> t) { return std::pow(t[1], 6); }, r2);
  CHECK(d.value == doctest::Approx(2 * pi * 5.0 / 16).epsilon(1e-12));
}

TEST_CASE("Monte Carlo error bars cover the truth") {
  // 3-sigma coverage over 1000 seeds for int_{S^2} (x^4 + y^2) = 4pi/5 + 4pi/3.
  const double truth = 4 * pi / 5 + 4 * pi / 3;
  std::size_t covered = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    const SphereRule r = sphere_rule(3, SphereMethod::antithetic_mc, 400, seed);
    const Estimate e = integrate_sphere([](std::span<const double> t) { return std::pow(t[0], 4) + t[1] * t[1]; }, r);
    if (std::fabs(e.value - truth) <= 3 * e.err) ++covered;
  }
  CHECK(covered >= 990);
}

TEST_CASE("plain Monte Carlo rule") {
  const SphereRule r = sphere_rule(4, SphereMethod::monte_carlo, 20000, 3);
  const Estimate e = integrate_sphere([](std::span<const double> t) { return t[3] * t[3]; }, r);
  CHECK(std::fabs(e.value - pi * pi / 2) <= 4 * e.err);
  CHECK(e.err > 0.0);
}

TEST_CASE("subsphere rule lies in xi-perp") {
  const Vec xi = normalized(std::vector<double>{1, 2, -2, 0.5});
  const SubsphereRule sub = subsphere_rule(xi, SphereRuleSpec{SphereMethod::product_gauss, 288, 1});
  CHECK(sub.rule.dim() == 4);
  CHECK(sub.rule.total_weight() == doctest::Approx(4 * pi));
  for (std::size_t i = 0; i < sub.rule.size(); ++i) {
    CHECK(std::fabs(dot(sub.rule.node(i), xi)) < 1e-14);
    CHECK(norm(sub.rule.node(i)) == doctest::Approx(1.0).epsilon(1e-14));
  }
  // Negating xi gives the same rule.
  Vec neg = xi;
  for (double& v : neg) v = -v;
  const SubsphereRule sub2 = subsphere_rule(neg, SphereRuleSpec{SphereMethod::product_gauss, 288, 1});
  CHECK(std::equal(sub.rule.nodes().begin(), sub.rule.nodes().end(), sub2.rule.nodes().begin()));
}

TEST_CASE("Gauss rules") {
  const GaussRule& g = gauss_legendre(10);
  double s = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], 18);
  CHECK(s == doctest::Approx(2.0 / 19).epsilon(1e-13));
  const GaussRule h = gauss_gegenbauer(8, 0.5);  // weight sqrt(1 - t^2), total pi/2
  double t = 0.0;
  for (double w : h.weights) t += w;
  CHECK(t == doctest::Approx(pi / 2).epsilon(1e-13));
}

TEST_CASE("adaptive radial integrals") {
  // int_0^2 r^2 e^{-r} dr = 2 - 10 e^{-2}
  const Estimate e = radial_integral([](double r) { return std::exp(-r); }, 2, 2.0, 1e-12);
  CHECK(e.value == doctest::Approx(2 - 10 * std::exp(-2.0)).epsilon(1e-12));
  // int_0^inf r e^{-r^2/2} dr = 1 with an analytic tail
  const double cut = 12.0;
  const Estimate f = radial_integral([](double r) { return std::exp(-r * r / 2); }, 1,
                                     RadialTail{cut, std::exp(-cut * cut / 2)}, 1e-12);
  CHECK(f.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(radial_integral([](double) { return 1.0; }, 3, 0.0, 1e-12).value == 0.0);
}

TEST_CASE("quadrature errors") {
  CHECK_THROWS_AS(integrate_sphere([](std::span<const double>) -> double { throw std::runtime_error("x"); },
                                   sphere_rule(3, SphereMethod::antithetic_mc, 10, 1)),
                  EvaluationError);
  CHECK_THROWS_AS(radial_integral([](double r) { return 1.0 / std::sqrt(std::fabs(r - 0.5)); }, 0, 1.0, 1e-14),
                  QuadratureFailure);
}
