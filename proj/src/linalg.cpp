#include "bplab/linalg.hpp"

#include <cmath>

#include "bplab/error.hpp"

namespace bplab {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> x) { return std::sqrt(dot(x, x)); }

Vec normalized(std::span<const double> x) {
  const double r = norm(x);
  if (!(r > 0.0) || !std::isfinite(r)) throw InputDomainError("cannot normalize a zero or non-finite vector");
  Vec out(x.begin(), x.end());
  for (double& v : out) v /= r;
  return out;
}

Vec unit_vector(std::size_t dim, std::size_t axis) {
  Vec e(dim, 0.0);
  e.at(axis) = 1.0;
  return e;
}

namespace {

void project_out(Vec& v, const std::vector<Vec>& against) {
  for (const Vec& u : against) {
    const double c = dot(v, u);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
  }
}

}  // namespace

std::vector<Vec> orthonormal_complement(const std::vector<Vec>& vectors, std::size_t dim) {
  if (vectors.size() > dim) throw InputDomainError("more spanning vectors than the dimension");
  std::vector<Vec> accepted = vectors;
  std::vector<Vec> basis;
  std::vector<bool> used(dim, false);
  const std::size_t want = dim - vectors.size();
  while (basis.size() < want) {
    std::size_t best = dim;
    double best_norm = -1.0;
    Vec best_vec;
    for (std::size_t c = 0; c < dim; ++c) {
      if (used[c]) continue;
      Vec v = unit_vector(dim, c);
      project_out(v, accepted);
      const double r = norm(v);
      if (r > best_norm) {
        best_norm = r;
        best = c;
        best_vec = std::move(v);
      }
    }
    if (best == dim || best_norm < 1e-8) throw InputDomainError("spanning vectors are not linearly independent");
    used[best] = true;
    project_out(best_vec, accepted);
    best_vec = normalized(best_vec);
    accepted.push_back(best_vec);
    basis.push_back(std::move(best_vec));
  }
  return basis;
}

Vec rotate_pairs(std::span<const double> x, double angle) {
  if (x.size() % 2 != 0) throw InputDomainError("pair rotation needs an even dimension");
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Vec out(x.size());
  for (std::size_t k = 0; k + 1 < x.size(); k += 2) {
    out[k] = c * x[k] - s * x[k + 1];
    out[k + 1] = s * x[k] + c * x[k + 1];
  }
  return out;
}

Vec apply_j(std::span<const double> x) {
  if (x.size() % 2 != 0) throw InputDomainError("complex structure needs an even dimension");
  Vec out(x.size());
  for (std::size_t k = 0; k + 1 < x.size(); k += 2) {
    out[k] = -x[k + 1];
    out[k + 1] = x[k];
  }
  return out;
}

}  // namespace bplab
