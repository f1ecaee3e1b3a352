#include "doctest.h"

#include <cmath>

#include "bplab/error.hpp"
#include "descriptors.hpp"

using namespace bplab;
using namespace bplab::cli;

TEST_CASE("body descriptors") {
  CHECK(parse_body("cube:3").dim() == 3);
  CHECK(radial(parse_body("ball:4:2"), unit_vector(4, 0)) == doctest::Approx(2.0));
  CHECK(parse_body("lp:inf:2").describe()["p"] == "inf");
  CHECK(parse_body("lp:1.5:5").dim() == 5);
  CHECK(radial(parse_body("ellipsoid:1,2,3"), unit_vector(3, 2)) == doctest::Approx(3.0));
  CHECK(parse_body("clp:2:3").dim() == 6);
  CHECK(parse_body("ccube:2").r_theta_invariant());
  CHECK(parse_body("zonal:4:1:1.5").family() == BodyFamily::zonal);
  CHECK(gauge(parse_body("cross:3"), std::vector<double>{1, -1, 1}) == doctest::Approx(3.0));
  CHECK_THROWS_AS(parse_body("cube"), ConfigError);
  CHECK_THROWS_AS(parse_body("torus:3"), ConfigError);
  CHECK_THROWS_AS(parse_body("lp:x:3"), ConfigError);
  CHECK_THROWS_AS(parse_body("cube:2.5"), ConfigError);
}

TEST_CASE("density descriptors") {
  CHECK(parse_density("lebesgue", 3).family() == DensityFamily::lebesgue);
  CHECK(parse_density("gaussian:2", 3)(std::vector<double>{2, 0, 0}) == doctest::Approx(std::exp(-0.5)));
  CHECK(parse_density("cauchy:2", 3).family() == DensityFamily::cauchy);
  CHECK(is_convex_measure(parse_density("cauchy-convex", 4).flags(), 4));
  CHECK_THROWS_AS(parse_density("uniform", 3), ConfigError);
  CHECK(parse_list("1,2.5,inf").size() == 3);
  CHECK_THROWS_AS(parse_list("1,,2"), ConfigError);
}
