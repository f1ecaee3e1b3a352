#include "descriptors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "bplab/error.hpp"

namespace bplab::cli {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_real(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

std::size_t parse_dim(const std::string& s) {
  const double v = parse_real(s);
  if (!(v >= 1.0) || v != std::floor(v) || v > 64.0) throw ConfigError("bad dimension: '" + s + "'");
  return static_cast<std::size_t>(v);
}

void expect_args(const std::vector<std::string>& parts, std::size_t lo, std::size_t hi, const std::string& text) {
  if (parts.size() < lo || parts.size() > hi) throw ConfigError("malformed descriptor '" + text + "'");
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text, ',')) out.push_back(parse_real(s));
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

StarBody parse_body(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw ConfigError("empty body descriptor");
  const std::string& kind = parts[0];
  if (kind == "ball") {
    expect_args(parts, 2, 3, text);
    return euclidean_ball(parse_dim(parts[1]), parts.size() == 3 ? parse_real(parts[2]) : 1.0);
  }
  if (kind == "cube") {
    expect_args(parts, 2, 3, text);
    return cube(parse_dim(parts[1]), parts.size() == 3 ? parse_real(parts[2]) : 1.0);
  }
  if (kind == "lp") {
    expect_args(parts, 3, 3, text);
    return lp_ball(parse_dim(parts[2]), parse_real(parts[1]));
  }
  if (kind == "cross") {
    expect_args(parts, 2, 2, text);
    return cross_polytope(parse_dim(parts[1]));
  }
  if (kind == "ellipsoid") {
    expect_args(parts, 2, 2, text);
    return ellipsoid_from_semi_axes(parse_list(parts[1]));
  }
  if (kind == "clp") {
    expect_args(parts, 3, 3, text);
    return complex_lp_ball(parse_dim(parts[2]), parse_real(parts[1]));
  }
  if (kind == "ccube") {
    expect_args(parts, 2, 2, text);
    return complex_lp_ball(parse_dim(parts[1]), std::numeric_limits<double>::infinity());
  }
  if (kind == "zonal") {
    expect_args(parts, 4, 4, text);
    const double p = parse_real(parts[1]);
    return zonal_body(Vec{0.0, 0.0, 1.0}, lp_revolution_profile(p, parse_real(parts[2]), parse_real(parts[3])),
                      p >= 1.0);
  }
  throw ConfigError("unknown body kind '" + kind + "' (see --list-bodies)");
}

DensitySpec parse_density(const std::string& text, std::size_t dim) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw ConfigError("empty density descriptor");
  const std::string& kind = parts[0];
  if (kind == "lebesgue") {
    expect_args(parts, 1, 1, text);
    return lebesgue(dim);
  }
  if (kind == "gaussian") {
    expect_args(parts, 1, 2, text);
    if (parts.size() == 1) return gaussian(dim);
    return gaussian(dim, std::vector<double>(dim, parse_real(parts[1])));
  }
  if (kind == "cauchy") {
    expect_args(parts, 2, 2, text);
    return cauchy(dim, parse_real(parts[1]));
  }
  if (kind == "cauchy-convex") {
    expect_args(parts, 1, 1, text);
    return cauchy(dim, static_cast<double>(dim) + 1.0);
  }
  throw ConfigError("unknown density kind '" + kind + "' (see --list-densities)");
}

std::string body_help() {
  return "ball:N[:R]        Euclidean ball of radius R in R^N\n"
         "cube:N[:H]        cube [-H, H]^N\n"
         "lp:P:N            unit lp ball, P in (0, inf]\n"
         "cross:N           cross-polytope (l1 ball as a polytope)\n"
         "ellipsoid:a,b,... axis-aligned ellipsoid with the given semi-axes\n"
         "clp:P:M           complex lp ball in C^M = R^{2M}\n"
         "ccube:M           complex cube max_k |z_k| <= 1 in R^{2M}\n"
         "zonal:P:A:C       body of revolution (|x'|/A)^P + (|x_3|/C)^P <= 1 in R^3\n";
}

std::string density_help() {
  return "lebesgue          f = 1\n"
         "gaussian[:S]      exp(-|x|^2 / (2 S^2)), S = 1 by default\n"
         "cauchy:P          1 / (1 + |x|^P); a convex measure when P >= n\n"
         "cauchy-convex     cauchy with P = n + 1\n";
}

}  // namespace bplab::cli
