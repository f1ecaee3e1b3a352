#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bplab/error.hpp"
#include "bplab/radon.hpp"
#include "bplab/rng.hpp"

using namespace bplab;
using std::numbers::pi;

TEST_CASE("Legendre polynomials and multipliers") {
  CHECK(legendre(0, 0.3) == 1.0);
  CHECK(legendre(2, 0.5) == doctest::Approx(-0.125));
  CHECK(legendre(4, 0.0) == doctest::Approx(3.0 / 8));
  CHECK(legendre(7, 1.0) == doctest::Approx(1.0));
  CHECK(funk_hecke_multiplier(0) == doctest::Approx(2 * pi));
  CHECK(funk_hecke_multiplier(2) == doctest::Approx(-pi).epsilon(1e-14));
  CHECK(funk_hecke_multiplier(3) == doctest::Approx(0.0));
}

TEST_CASE("Radon transform on S^2") {
  const SphereRuleSpec sub{SphereMethod::product_gauss, 128, 1};
  const SphereFunction one = sphere_function([](std::span<const double>) { return 1.0; }, true);
  CHECK(radon(one, Vec{0, 0, 1}, sub).value == doctest::Approx(2 * pi));
  // R(x3^2)(xi) = pi (1 - xi3^2)
  const SphereFunction x3 = sphere_function([](std::span<const double> t) { return t[2] * t[2]; }, true);
  const Vec xi = normalized(std::vector<double>{1, 2, 2});
  CHECK(radon(x3, xi, sub).value == doctest::Approx(pi * (1 - xi[2] * xi[2])).epsilon(1e-12));
  // Zonal P_2 is an eigenfunction with multiplier -pi.
  const SphereFunction p2 = zonal_function(Vec{0, 0, 1}, [](double t) { return legendre(2, t); });
  CHECK(radon(p2, xi, sub).value == doctest::Approx(-pi * legendre(2, xi[2])).epsilon(1e-12));
}

TEST_CASE("self-duality") {
  const SphereRule rule = sphere_rule(3, SphereMethod::antithetic_mc, 20000, 3);
  const SphereRuleSpec sub{SphereMethod::product_gauss, 128, 1};
  const SphereFunction f = sphere_function([](std::span<const double> t) { return std::exp(t[0] * t[1]); }, true);
  const SphereFunction g = sphere_function([](std::span<const double> t) { return 1 + t[2] * t[2] * t[0] * t[0]; }, true);
  const Estimate r = selfduality_residual(f, g, rule, sub);
  CHECK(r.value <= 3 * r.err);
}

TEST_CASE("zonal inversion round trip") {
  std::vector<double> coeffs(9, 0.0);
  coeffs[0] = 1.0;
  coeffs[2] = 0.3;
  coeffs[4] = -0.2;
  coeffs[6] = 0.05;
  coeffs[8] = 0.01;
  const auto h = zonal_radon_forward(coeffs);
  CHECK(h(0.3) == doctest::Approx(2 * pi * 1.0 - pi * 0.3 * legendre(2, 0.3) + funk_hecke_multiplier(4) * -0.2 * legendre(4, 0.3) +
                                  funk_hecke_multiplier(6) * 0.05 * legendre(6, 0.3) +
                                  funk_hecke_multiplier(8) * 0.01 * legendre(8, 0.3)));
  const ZonalCertificate c = zonal_radon_inverse(zonal_function(Vec{0, 0, 1}, h), 8, 1e-10);
  REQUIRE(c.degrees.size() == 5);
  for (std::size_t i = 0; i < c.degrees.size(); ++i) CHECK(std::fabs(c.coeffs[i] - coeffs[c.degrees[i]]) <= 1e-8);
  CHECK(c.verdict == ZonalVerdict::certified_positive);
  CHECK(c.g(0.0) == doctest::Approx(1.0 - 0.15 - 0.2 * 3.0 / 8 + 0.05 * legendre(6, 0.0) + 0.01 * legendre(8, 0.0)));
}

TEST_CASE("zonal certificates") {
  // Ellipsoids are intersection bodies: certificate positive.
  const StarBody e = zonal_body(Vec{0, 0, 1}, lp_revolution_profile(2, 1.0, 1.5), true);
  const ZonalCertificate c = zonal_certificate(e, 48, 1e-8);
  CHECK(c.verdict == ZonalVerdict::certified_positive);
  CHECK(c.to_json()["verdict"] == "certified_positive");
  // A kinked profile is not resolved by a low degree cut.
  const StarBody k = zonal_body(Vec{0, 0, 1}, lp_revolution_profile(1, 1.0, 1.0), true);
  CHECK_THROWS_AS(zonal_certificate(k, 6, 1e-8), ResolutionError);
  CHECK_THROWS_AS(zonal_certificate(cube(3), 8, 1e-8), InputDomainError);
}

TEST_CASE("intersection body of the ball") {
  const StarBody ib = intersection_body_of(euclidean_ball(3), default_rules(3));
  Rng rng(1);
  for (int i = 0; i < 5; ++i) CHECK(radial(ib, rng.unit_vector(3)) == doctest::Approx(pi).epsilon(1e-12));
  const StarBody ic = intersection_body_of(cube(3), default_rules(3));
  CHECK(radial(ic, Vec{0, 0, 1}) == doctest::Approx(4.0).epsilon(1e-2));
  CHECK(radial(ic, Vec{0, 0, -1}) == radial(ic, Vec{0, 0, 1}));
}
