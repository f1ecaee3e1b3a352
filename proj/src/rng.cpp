#include "bplab/rng.hpp"

#include <cmath>
#include <numbers>

namespace bplab {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

std::vector<double> Rng::normal_vector(std::size_t dim) {
  std::vector<double> v(dim);
  for (double& x : v) x = normal();
  return v;
}

std::vector<double> Rng::unit_vector(std::size_t dim) {
  for (;;) {
    std::vector<double> v = normal_vector(dim);
    double s = 0.0;
    for (double x : v) s += x * x;
    if (s < 1e-20) continue;
    const double r = std::sqrt(s);
    for (double& x : v) x /= r;
    return v;
  }
}

}  // namespace bplab
