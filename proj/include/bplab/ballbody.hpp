#pragma once

// The body K_f with gauge ((n-1) int_0^inf (1_K f)(r x) r^{n-2} dr)^{-1/(n-1)}:
// its hyperplane sections have volume mu(K cap xi^perp).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bplab/estimate.hpp"
#include "bplab/geometry.hpp"
#include "bplab/measures.hpp"
#include "bplab/sections.hpp"

namespace bplab {

class BallBodyModel : public BodyModel {
 public:
  BallBodyModel(StarBody base, DensitySpec density, double tol);
  double gauge(std::span<const double> x) const override;
  void gauge_batch(std::span<const double> block, std::size_t count, std::span<double> out) const override;
  nlohmann::json describe() const override;

  /// rho_{K_f}(theta) = ((n-1) int_0^{rho_K(theta)} r^{n-2} f(r theta) dr)^{1/(n-1)}.
  double radius(std::span<const double> theta, double rho_k) const;

  const StarBody& base() const { return base_; }
  const DensitySpec& density() const { return density_; }

 private:
  StarBody base_;
  DensitySpec density_;
  double tol_;
};

/// K_f. Throws DegenerateBodyError when f vanishes on K along every probe direction.
StarBody ball_body(const StarBody& body, const DensitySpec& f, double tol = 1e-12);

struct NormAxiomCheck {
  std::size_t triangle_violations = 0;
  double worst_gap = 0.0;  // largest relative excess of |x+y| over |x| + |y|
  std::size_t homogeneity_violations = 0;
};

/// Samples pairs (x, y) and tests the triangle inequality beyond 1e-9 relative
/// and positive homogeneity to 1e-10.
NormAxiomCheck verify_norm_axioms(const StarBody& kf, std::size_t trials, std::uint64_t seed);

struct SectionIdentity {
  Estimate kf_section;       // vol_{n-1}(K_f cap xi^perp)
  Estimate measure_section;  // mu(K cap xi^perp)
  Estimate residual;         // |difference| with combined error
};

/// The K_f side uses an independent subsphere rule (next seed, or a finer
/// product level) so the two sides are separate quadratures.
SectionIdentity section_identity_residual(const StarBody& body, const DensitySpec& f, std::span<const double> xi,
                                          const RuleSet& rules);

struct KlartagStudy {
  std::vector<double> ratios;  // per direction
  double min = 0.0;
  double max = 0.0;
  Estimate global;  // vol_n(K_f) / mu(K) with f normalized to f(0) = 1
  bool positive_finite = true;
};

/// Directional ratios int t^{n-1} g / (int t^{n-2} g)^{n/(n-1)} with
/// g(t) = (1_K f)(t theta), f rescaled so that f(0) = 1, and the global volume ratio.
KlartagStudy klartag_ratio_study(const DensitySpec& f, const StarBody& body, std::size_t n_dirs,
                                 const RuleSet& rules, std::uint64_t seed);

}  // namespace bplab
