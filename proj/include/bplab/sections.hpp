#pragma once

// Polar-coordinate formulas for measures of star bodies and of their central
// real and complex hyperplane sections.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

#include "bplab/estimate.hpp"
#include "bplab/geometry.hpp"
#include "bplab/measures.hpp"
#include "bplab/quadrature.hpp"

namespace bplab {

struct RuleSet {
  SphereRuleSpec sphere;     // rules on S^{n-1}
  SphereRuleSpec subsphere;  // base rule for great subspheres
  double radial_tol = 1e-10;
};

/// Antithetic Monte Carlo on S^{n-1}; product Gauss rules on subspheres where
/// supported (budget 128 on the circle, 288 on S^2, 1024 on S^3, 2048 above).
RuleSet default_rules(std::size_t n);
/// Same sphere rule; the subsphere rule is sized for the (2m-3)-sphere of a complex hyperplane in R^{2m}.
RuleSet default_complex_rules(std::size_t n);

nlohmann::json describe(const RuleSet& rules);

struct SectionQuery {
  StarBody body;
  DensitySpec density;
  Vec direction;
  RuleSet rules;
};

/// Sum over the rule of w_i * int_0^{rho_K(theta_i)} r^k f(r theta_i) dr.
Estimate polar_integral(const SphereRule& rule, const StarBody& body, const DensitySpec& f, int k, double tol);

/// mu(K).
Estimate measure_of_body(const StarBody& body, const DensitySpec& f, const SphereRule& rule, double tol);
Estimate measure_of_body(const StarBody& body, const DensitySpec& f, const RuleSet& rules);
Estimate measure_of_body(const SectionQuery& q);

/// vol_n(K) = (1/n) int rho^n.
Estimate volume_of_body(const StarBody& body, const SphereRule& rule);
Estimate volume_of_body(const StarBody& body, const SphereRuleSpec& spec);

/// Base subsphere rule built once and embedded per direction.
class SubsphereRules {
 public:
  SubsphereRules(std::size_t n, const SphereRuleSpec& spec);
  SubsphereRule at(std::span<const double> xi) const { return subsphere_rule(xi, base_); }
  const SphereRule& base() const { return base_; }

 private:
  SphereRule base_;
};

/// mu(K cap xi^perp).
Estimate section_measure(const StarBody& body, const DensitySpec& f, const SubsphereRule& sub, double tol);
Estimate section_measure(const StarBody& body, const DensitySpec& f, std::span<const double> xi,
                         const RuleSet& rules);
Estimate section_measure(const SectionQuery& q);

/// vol_{n-1}(K cap xi^perp) = (1/(n-1)) int rho^{n-1} over the subsphere.
Estimate section_volume(const StarBody& body, const SubsphereRule& sub);
Estimate section_volume(const StarBody& body, std::span<const double> xi, const RuleSet& rules);

struct MaxSection {
  Vec xi;
  Estimate value;
  /// Section values at the seeded candidates, before refinement.
  std::vector<Estimate> candidates;
};

/// Best of n_dirs seeded directions, refined by three rounds of coordinate
/// ascent on the sphere. A lower bound on the true maximum.
MaxSection max_section(const DensitySpec& f, const StarBody& body, const RuleSet& rules, std::size_t n_dirs,
                       std::uint64_t seed);

/// mu(K) for an R_theta-invariant body in R^{2m}.
Estimate complex_measure_of_body(const StarBody& body, const DensitySpec& f, const RuleSet& rules);

/// mu(K cap H_xi) over the (2m-3)-sphere of the complex hyperplane. Body and
/// density must both be R_theta-invariant (symmetrize the density first).
Estimate complex_section_measure(const StarBody& body, const DensitySpec& f, const ComplexDirection& cdir,
                                 const RuleSet& rules);
Estimate complex_section_measure(const StarBody& body, const DensitySpec& f, const ComplexDirection& cdir,
                                 const SphereRule& base, double tol);

}  // namespace bplab
