#pragma once

// Short textual descriptors for bodies and densities used on the command line.

#include <string>
#include <vector>

#include "bplab/geometry.hpp"
#include "bplab/measures.hpp"

namespace bplab::cli {

/// ball:N[:R], cube:N[:H], lp:P:N, cross:N, ellipsoid:a,b,c,...,
/// clp:P:M, ccube:M, zonal:P:A:C (R^3, axis e_3). P may be "inf".
StarBody parse_body(const std::string& text);

/// lebesgue, gaussian[:sigma], cauchy:P, cauchy-convex (P = n + 1).
DensitySpec parse_density(const std::string& text, std::size_t dim);

/// Comma-separated reals.
std::vector<double> parse_list(const std::string& text);

std::string body_help();
std::string density_help();

}  // namespace bplab::cli
