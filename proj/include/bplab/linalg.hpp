#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bplab {

using Vec = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> x);
Vec normalized(std::span<const double> x);
Vec unit_vector(std::size_t dim, std::size_t axis);

/// Orthonormal basis of the orthogonal complement of span(vectors), where the
/// inputs are orthonormal. Candidates are the coordinate axes; each step takes
/// the candidate with the largest residual (first index on ties), followed by a
/// second Gram-Schmidt pass. The result is unchanged when any input is negated.
std::vector<Vec> orthonormal_complement(const std::vector<Vec>& vectors, std::size_t dim);

/// Coordinate-wise rotation of consecutive pairs (x_{k1}, x_{k2}) by `angle`.
Vec rotate_pairs(std::span<const double> x, double angle);

/// Rotation of every coordinate pair by pi/2.
Vec apply_j(std::span<const double> x);

}  // namespace bplab
