#pragma once

// Verification harnesses: Busemann-Petty type comparisons (real and complex),
// the elementary-lemma property suites, hyperplane-inequality studies, the
// general-measure counterexample scan and the constant-section body.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bplab/ballbody.hpp"
#include "bplab/geometry.hpp"
#include "bplab/measures.hpp"
#include "bplab/radon.hpp"
#include "bplab/report.hpp"
#include "bplab/rng.hpp"
#include "bplab/sections.hpp"

namespace bplab {

/// 200 directions for n <= 4, 500 above.
std::size_t default_direction_count(std::size_t n);

/// Solves sum_i w_i int_0^{s rho_K(theta_i)} r^k f(r theta_i) dr = target for s
/// (safeguarded Newton). Returns +inf when the target is out of reach.
double match_scale(const StarBody& body, const DensitySpec& f, const SphereRule& rule, int k, double target,
                   double tol);

struct BpOptions {
  /// Shrink (or grow) K by the scalar making domination tight at the sampled directions.
  bool construct_domination = true;
  std::size_t zonal_degree_cut = 48;
  double zonal_tol = 1e-6;
};

/// Compares mu(K) with mu(M) given (or after constructing) domination of the
/// central sections at n_dirs seeded directions. K must be convex.
ExperimentReport bp_check(const DensitySpec& f, const StarBody& body_k, const StarBody& body_m, std::size_t n_dirs,
                          const RuleSet& rules, std::uint64_t seed, const BpOptions& opts = {});

/// Complex-hyperplane version in R^{2m}; the density is replaced by its
/// R_theta symmetrization unless already invariant. Bound: 2m.
ExperimentReport complex_bp_check(const DensitySpec& f, const StarBody& body_k, const StarBody& body_m,
                                  std::size_t n_dirs, const RuleSet& rules, std::uint64_t seed,
                                  const BpOptions& opts = {});

/// Why K is known to be an intersection body (lp ball with 1 <= p <= 2,
/// ellipsoid, linear image of one of these), if it is.
std::optional<std::string> intersection_body_evidence(const StarBody& body);

// ---- random instances -----------------------------------------------------

StarBody random_convex_body(std::size_t n, Rng& rng);
/// Complex lp balls with random exponent and moduli scales in R^{2m}.
StarBody random_complex_body(std::size_t complex_dim, Rng& rng);

struct SuiteOptions {
  std::size_t pairs = 100;
  std::vector<std::size_t> dims{3, 4, 5};
  std::size_t n_dirs = 0;  // 0: default_direction_count
  std::uint64_t seed = 1;
  /// Every third pair in n = 3 uses a zonal K so the certified bound is exercised.
  bool include_zonal = true;
};

/// Seeded random pairs with constructed domination, alternating Gaussian and
/// convexified Cauchy (p = n + 1) densities. One table row per pair.
ExperimentReport bp_suite(const SuiteOptions& opts);

struct ComplexSuiteOptions {
  std::size_t pairs = 25;
  std::vector<std::size_t> complex_dims{2, 3};
  std::size_t n_dirs = 0;
  std::uint64_t seed = 1;
};

ExperimentReport complex_bp_suite(const ComplexSuiteOptions& opts);

// ---- elementary lemmas ----------------------------------------------------

struct LemmaCheck {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_gap = 0.0;  // largest (lhs - rhs) / scale
};

/// Piecewise-constant alpha >= 0 on [0, L): integral of t^k alpha over [0, c], exactly.
struct PiecewiseConstant {
  std::vector<double> breaks;  // 0 = b_0 < b_1 < ... < b_m
  std::vector<double> values;  // alpha on [b_j, b_{j+1})
  double moment(int k, double c) const;
};

/// (w/a) int_0^a t^{n-1} alpha - w int_0^a t^{n-2} alpha <= same with b.
LemmaCheck lemma_elementary_property(std::size_t n, std::size_t trials, std::uint64_t seed);
/// (w/a)^2 int_0^a t^{2n-1} alpha - w^2 int_0^a t^{2n-3} alpha <= same with b.
LemmaCheck lemma_elemcomp_property(std::size_t n, std::size_t trials, std::uint64_t seed);

/// Both sides of the elementary inequality for one instance (weight exponent e = 1 or 2, powers p, q).
std::pair<double, double> lemma_sides(double omega, double a, double b, const PiecewiseConstant& alpha, int e,
                                      int p, int q);

// ---- hyperplane inequalities ----------------------------------------------

/// c_n = vol_n(B_2^n)^{(n-1)/n} / vol_{n-1}(B_2^{n-1}).
double cn_constant(std::size_t n);

struct HyperplaneStudy {
  Estimate mu;
  MaxSection max_sec;
  Estimate vol;
  double ratio_sqrtn = 0.0;
  double ratio_sqrtn_rel_err = 0.0;
  double bound = 0.0;  // sqrt(n) n/(n-1) c_n
  bool holds = true;
  double ratio_bob = 0.0;
  bool bob_assertable = false;  // convex measures only
};

HyperplaneStudy hyperplane_study(const DensitySpec& f, const StarBody& body, const RuleSet& rules, std::size_t n_dirs,
                                 std::uint64_t seed);
ExperimentReport hyperplane_report(const DensitySpec& f, const StarBody& body, const RuleSet& rules,
                                   std::size_t n_dirs, std::uint64_t seed);

struct CounterexampleRow {
  double t = 0.0;
  Estimate section;
  Estimate mu;
  double ratio_bob = 0.0;
};

struct CounterexampleScan {
  std::vector<CounterexampleRow> rows;
  bool strictly_decreasing = true;
  double tail_slope = 0.0;      // d log ratio_bob / d log t over the last two grid points
  double expected_slope = 0.0;  // -p / n
};

/// K = t B_2^n with f(x) = 1 / (1 + |x|^p), 0 < p < n.
CounterexampleScan counterexample_scan(std::size_t n, double p, const std::vector<double>& t_grid,
                                       const RuleSet& rules);
ExperimentReport counterexample_report(std::size_t n, double p, const std::vector<double>& t_grid,
                                       const RuleSet& rules);

struct ConstantSection {
  bool admissible = false;
  double capacity = 0.0;  // |S^{n-2}| int_0^inf r^{n-2} f(r) dr (inf for Lebesgue)
  double t = 0.0;
  Estimate mu;
  Estimate vol;
  double constant = 0.0;  // |S^{n-1}|^{(n-1)/n} n^{1/n} / |S^{n-2}|
  double rhs = 0.0;       // constant * Lambda * vol^{1/n}
  bool holds = false;
};

/// Radius t of the ball tB_2^n whose sections all have measure Lambda, for a
/// rotation-invariant density, and the resulting hyperplane inequality.
ConstantSection constant_section_body(const DensitySpec& f, double lambda, const RuleSet& rules);
ExperimentReport const_section_report(const DensitySpec& f, double lambda, const RuleSet& rules);

// ---- property suite -------------------------------------------------------

struct PropertySuiteOptions {
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  bool lemmas = true;
  bool selfduality = true;
  bool ball_body = true;
};

ExperimentReport property_suite(const PropertySuiteOptions& opts);

/// Radon experiment: zonal certificate of a body of revolution in R^3.
ExperimentReport radon_report(const StarBody& body, std::size_t degree_cut, double tol);

/// K_f experiment: norm axioms, section identity and the Klartag ratios.
ExperimentReport ballbody_report(const StarBody& body, const DensitySpec& f, const RuleSet& rules,
                                 std::size_t trials, std::uint64_t seed);

}  // namespace bplab
