#include "doctest.h"

#include <cmath>
#include <limits>

#include "bplab/error.hpp"
#include "bplab/geometry.hpp"
#include "bplab/kernels.hpp"
#include "bplab/rng.hpp"

using namespace bplab;

TEST_CASE("lp ball gauges and radii") {
  const StarBody c = cube(3);
  const Vec d = normalized(std::vector<double>{1, 1, 1});
  CHECK(radial(c, d) == doctest::Approx(std::sqrt(3.0)));
  CHECK(gauge(c, std::vector<double>{0.5, -2.0, 1.0}) == doctest::Approx(2.0));
  const StarBody l1 = lp_ball(3, 1.0);
  CHECK(gauge(l1, std::vector<double>{0.5, -2.0, 1.0}) == doctest::Approx(3.5));
  const StarBody l3 = lp_ball(2, 3.0, {2.0, 1.0});
  CHECK(gauge(l3, std::vector<double>{2.0, 1.0}) == doctest::Approx(std::cbrt(2.0)));
  CHECK(gauge(euclidean_ball(4, 2.0), std::vector<double>{1, 1, 1, 1}) == doctest::Approx(1.0));
  CHECK(gauge(c, std::vector<double>{0, 0, 0}) == 0.0);
  CHECK(c.convex());
  CHECK_FALSE(lp_ball(3, 0.5).convex());
  CHECK(c.describe()["family"] == "lp_ball");
}

TEST_CASE("polytope, ellipsoid and linear image agree with closed forms") {
  Rng rng(5);
  const StarBody cross = cross_polytope(3);
  const StarBody l1 = lp_ball(3, 1.0);
  const StarBody e = ellipsoid_from_semi_axes({1.0, 2.0, 0.5});
  Eigen::MatrixXd t(3, 3);
  t << 2, 1, 0, 0, 1, 0, 1, 0, 3;
  const StarBody te = linear_image(l1, t);
  for (int i = 0; i < 50; ++i) {
    const Vec u = rng.unit_vector(3);
    CHECK(radial(cross, u) == doctest::Approx(radial(l1, u)).epsilon(1e-13));
    const double want = 1.0 / std::sqrt(u[0] * u[0] + u[1] * u[1] / 4 + u[2] * u[2] * 4);
    CHECK(radial(e, u) == doctest::Approx(want).epsilon(1e-13));
    const Eigen::Vector3d x(u[0], u[1], u[2]);
    const Eigen::Vector3d y = t * x;
    CHECK(gauge(te, std::vector<double>{y(0), y(1), y(2)}) == doctest::Approx(gauge(l1, u)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(linear_image(l1, Eigen::MatrixXd::Zero(3, 3)), InputDomainError);
}

TEST_CASE("scaling keeps the family") {
  const StarBody s = scaled(lp_ball(3, 4.0), 2.5);
  CHECK(s.family() == BodyFamily::lp_ball);
  CHECK(radial(s, unit_vector(3, 1)) == doctest::Approx(2.5));
  const StarBody z = scaled(zonal_body(Vec{0, 0, 1}, lp_revolution_profile(2, 1, 2), true), 0.5);
  CHECK(z.family() == BodyFamily::zonal);
  CHECK(radial(z, unit_vector(3, 2)) == doctest::Approx(1.0));
}

TEST_CASE("zonal bodies") {
  const StarBody z = zonal_body(Vec{0, 0, 1}, lp_revolution_profile(2, 1.0, 2.0), true);
  const StarBody e = ellipsoid_from_semi_axes({1.0, 1.0, 2.0});
  Rng rng(2);
  for (int i = 0; i < 30; ++i) {
    const Vec u = rng.unit_vector(3);
    CHECK(radial(z, u) == doctest::Approx(radial(e, u)).epsilon(1e-12));
  }
}

TEST_CASE("complex lp balls are R_theta invariant") {
  const StarBody k = complex_lp_ball(2, 3.0, {1.0, 1.5});
  CHECK(k.dim() == 4);
  CHECK(k.r_theta_invariant());
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    const Vec x = rng.normal_vector(4);
    CHECK(gauge(k, rotate_pairs(x, rng.uniform(0, 6.3))) == doctest::Approx(gauge(k, x)).epsilon(1e-13));
  }
  // |z1| = 1 lies on the boundary.
  CHECK(gauge(k, std::vector<double>{0.6, 0.8, 0, 0}) == doctest::Approx(1.0));
  CHECK(euclidean_ball(4).r_theta_invariant());
  CHECK_FALSE(lp_ball(4, 3.0).r_theta_invariant());
}

TEST_CASE("complex directions") {
  Rng rng(4);
  const Vec xi = rng.unit_vector(6);
  const ComplexDirection cd = complex_direction(xi);
  const Vec jxi = apply_j(xi);
  REQUIRE(cd.basis.size() == 4);
  for (std::size_t a = 0; a < 4; ++a) {
    CHECK(std::fabs(dot(cd.basis[a], xi)) < 1e-13);
    CHECK(std::fabs(dot(cd.basis[a], jxi)) < 1e-13);
    for (std::size_t b = 0; b < 4; ++b)
      CHECK(dot(cd.basis[a], cd.basis[b]) == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-13));
  }
  CHECK_THROWS_AS(complex_direction(rng.unit_vector(5)), InputDomainError);
}

TEST_CASE("input and integrity errors") {
  CHECK_THROWS_AS(radial(cube(3), std::vector<double>{1, 1, 0}), InputDomainError);
  const StarBody bad = radial_oracle_body(
      3, BodyFamily::zonal, [](std::span<const double>) { return std::numeric_limits<double>::quiet_NaN(); }, {},
      BodyTraits{});
  CHECK_THROWS_AS(radial(bad, unit_vector(3, 0)), BodyIntegrityError);
  CHECK_THROWS_AS(lp_ball(3, -1.0), InputDomainError);
  CHECK_THROWS_AS(polytope({Vec{1, 0}, Vec{0, 1}}, {1.0, 1.0}), InputDomainError);
}

TEST_CASE("distance bounds") {
  const DistanceBound c = ball_distance_bound(cube(4));
  CHECK(c.analytic);
  CHECK(c.d == doctest::Approx(2.0));
  const DistanceBound e = ball_distance_bound(ellipsoid_from_semi_axes({1.0, 3.0, 0.2}));
  CHECK(e.analytic);
  CHECK(e.d == doctest::Approx(1.0));
  const DistanceBound l = ball_distance_bound(lp_ball(5, 4.0));
  CHECK(l.d == doctest::Approx(std::pow(5.0, 0.25)));
  // Sampled bound for a zonal body: finite and at least 1.
  const DistanceBound z = ball_distance_bound(zonal_body(Vec{0, 0, 1}, lp_revolution_profile(4, 1, 1), true));
  CHECK_FALSE(z.analytic);
  CHECK(z.d >= 1.0);
  CHECK(z.d < 2.0);
}

TEST_CASE("batched radii match single evaluations under both ISAs") {
  Rng rng(8);
  const std::size_t count = 37, n = 4;
  std::vector<double> block(n * count);
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < count; ++i) {
    pts.push_back(rng.unit_vector(n));
    for (std::size_t j = 0; j < n; ++j) block[j * count + i] = pts.back()[j];
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Identity(4, 4);
  t(0, 1) = 0.4;
  const StarBody bodies[] = {cube(4), lp_ball(4, 1.0), lp_ball(4, 2.0), lp_ball(4, 3.5),
                             ellipsoid_from_semi_axes({1, 2, 3, 4}), cross_polytope(4),
                             complex_lp_ball(2, 1.5), linear_image(cube(4), t)};
  const auto saved = kernels::active_isa();
  for (auto isa : {kernels::Isa::scalar, kernels::Isa::avx2}) {
    if (!kernels::isa_supported(isa)) continue;
    kernels::set_isa(isa);
    for (const auto& b : bodies) {
      std::vector<double> out(count);
      radial_batch(b, block, count, out);
      for (std::size_t i = 0; i < count; ++i) CHECK(out[i] == doctest::Approx(radial(b, pts[i])).epsilon(1e-14));
    }
  }
  kernels::set_isa(saved);
}
