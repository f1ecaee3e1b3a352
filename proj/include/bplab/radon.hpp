#pragma once

// Spherical Radon (Funk) transform, self-duality checks, intersection bodies
// and zonal inversion on S^2 with positivity certificates.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "bplab/estimate.hpp"
#include "bplab/geometry.hpp"
#include "bplab/quadrature.hpp"
#include "bplab/sections.hpp"

namespace bplab {

struct ZonalPart {
  Vec axis;
  std::function<double(double)> profile;  // t = <theta, axis>
};

struct SphereFunction {
  std::function<double(std::span<const double>)> fn;
  bool even = false;
  std::optional<ZonalPart> zonal;

  double operator()(std::span<const double> theta) const { return fn(theta); }
};

SphereFunction sphere_function(std::function<double(std::span<const double>)> fn, bool even);
SphereFunction zonal_function(Vec axis, std::function<double(double)> profile, bool even = true);

/// Rf(xi): integral of f over S^{n-1} cap xi^perp.
Estimate radon(const SphereFunction& f, const SubsphereRule& sub);
Estimate radon(const SphereFunction& f, std::span<const double> xi, const SphereRuleSpec& sub);

/// |int Rf g - int f Rg| from per-node differences Rf(xi_i) g(xi_i) - f(xi_i) Rg(xi_i).
/// The error adds the outer statistical error and the inner transform errors.
Estimate selfduality_residual(const SphereFunction& f, const SphereFunction& g, const SphereRule& rule,
                              const SphereRuleSpec& sub);

/// Body with rho(xi) = vol_{n-1}(L cap xi^perp), memoized per direction.
StarBody intersection_body_of(const StarBody& body, const RuleSet& rules);

/// Legendre polynomial P_k(t).
double legendre(std::size_t k, double t);

/// Funk-Hecke multiplier of the Radon transform on degree-k zonal harmonics of S^2: 2 pi P_k(0).
double funk_hecke_multiplier(std::size_t k);

enum class ZonalVerdict { certified_positive, certified_negative, inconclusive };
std::string verdict_name(ZonalVerdict v);

struct ZonalCertificate {
  std::vector<std::size_t> degrees;  // even degrees 0, 2, ..., degree_cut
  std::vector<double> coeffs;        // Legendre coefficients of g
  std::vector<double> multipliers;   // m_k
  double min_g = 0.0;
  double residual = 0.0;  // sup |h - h_trunc| on [-1, 1]
  ZonalVerdict verdict = ZonalVerdict::inconclusive;

  double g(double t) const;
  nlohmann::json to_json() const;
};

/// Solves R g = h for even zonal h on S^2 by Legendre expansion up to
/// degree_cut. Throws ResolutionError if the truncation residual exceeds tol.
ZonalCertificate zonal_radon_inverse(const SphereFunction& h, std::size_t degree_cut, double tol = 1e-8);

/// Zonal profile of sum_k m_k a_k P_k: the forward transform of g = sum_k a_k P_k (coeffs by degree).
std::function<double(double)> zonal_radon_forward(std::vector<double> coeffs_by_degree);

/// Certificate for a zonal body of R^3: inverts h = rho_K along the axis.
ZonalCertificate zonal_certificate(const StarBody& body, std::size_t degree_cut, double tol);

}  // namespace bplab
