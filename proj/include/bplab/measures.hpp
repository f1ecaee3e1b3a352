#pragma once

// Measures with even continuous densities: pointwise oracles, concavity and
// invariance checks, and the complex (R_theta) symmetrization.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "bplab/estimate.hpp"
#include "bplab/linalg.hpp"
#include "bplab/quadrature.hpp"

namespace bplab {

enum class ConcavityClass { none, convex_measure, log_concave, s_concave };

enum class DensityFamily { lebesgue, gaussian, cauchy, custom, symmetrized, scaled };

std::string concavity_name(ConcavityClass c);
std::string density_family_name(DensityFamily family);

struct DensityFlags {
  bool even = true;
  bool rotation_invariant = false;
  bool r_theta_invariant = false;
  ConcavityClass concavity = ConcavityClass::none;
  /// Exponent for ConcavityClass::s_concave.
  double s = 0.0;
};

/// True when the flags promise a -1/n-concave density (a convex measure).
bool is_convex_measure(const DensityFlags& flags, std::size_t dim);

class DensityModel {
 public:
  virtual ~DensityModel() = default;

  virtual double eval(std::span<const double> x) const = 0;

  /// f(r theta) for a unit theta. The default builds the point and calls eval.
  virtual double along(std::span<const double> theta, double r) const;

  /// Cutoff and analytic remainder for int_0^inf r^k f(r theta) dr, if known.
  virtual std::optional<RadialTail> tail(std::span<const double> theta, int k, double tol) const;

  /// Family parameters (without "family", "dim" and "flags").
  virtual nlohmann::json describe() const = 0;
};

class DensitySpec {
 public:
  DensitySpec(std::size_t dim, DensityFamily family, DensityFlags flags, std::shared_ptr<const DensityModel> model,
              double lipschitz);

  std::size_t dim() const { return dim_; }
  DensityFamily family() const { return family_; }
  const DensityFlags& flags() const { return flags_; }
  const DensityModel& model() const { return *model_; }
  double f0() const { return f0_; }
  /// Declared Lipschitz modulus used by the continuity check (inf when none is declared).
  double lipschitz() const { return lipschitz_; }

  /// f(x); throws DensityIntegrityError on a negative or NaN value.
  double operator()(std::span<const double> x) const;
  /// f(r theta) with the same check; theta is trusted to be a unit vector.
  double along(std::span<const double> theta, double r) const {
    const double v = model_->along(theta, r);
    if (!(v >= 0.0)) negative_value(v);
    return v;
  }

  nlohmann::json describe() const;

 private:
  [[noreturn]] static void negative_value(double v);

  std::size_t dim_;
  DensityFamily family_;
  DensityFlags flags_;
  std::shared_ptr<const DensityModel> model_;
  double f0_ = 0.0;
  double lipschitz_;
};

double eval_density(const DensitySpec& d, std::span<const double> x);

// ---- families -------------------------------------------------------------

/// f = 1.
DensitySpec lebesgue(std::size_t dim);

/// f(x) = exp(-sum_j x_j^2 / (2 sigma_j^2)); sigma defaults to all ones.
DensitySpec gaussian(std::size_t dim, std::vector<double> sigma = {});

/// f(x) = 1 / (1 + |x|^p), p > 0. A convex measure exactly when p >= dim.
DensitySpec cauchy(std::size_t dim, double p);

struct CustomDensity {
  std::function<double(std::span<const double>)> eval;
  DensityFlags flags;
  double lipschitz = 0.0;
  nlohmann::json descriptor = nlohmann::json::object();
  /// Optional (theta, k, tol) -> tail for infinite radial ranges.
  std::function<RadialTail(std::span<const double>, int, double)> tail;
};

DensitySpec custom_density(std::size_t dim, CustomDensity spec);

/// f_c(x) = (1/2pi) int_0^{2pi} f(R_theta x) d theta by the closed trapezoid
/// rule with `angular_nodes` points.
DensitySpec symmetrize_complex(const DensitySpec& d, std::size_t angular_nodes = 64);

/// c f for c > 0.
DensitySpec scaled_density(const DensitySpec& d, double c);

// ---- checks ---------------------------------------------------------------

struct ConcavityCheck {
  std::size_t violations = 0;
  double worst_gap = 0.0;  // largest relative excess of f^{-1/n} over the chord
  std::size_t tested = 0;
};

/// Randomized falsifier for -1/n-concavity: points drawn from the cube
/// [-radius, radius]^n, violations counted beyond 1e-9 relative.
ConcavityCheck check_neg_inv_n_concave(const DensitySpec& d, std::size_t trials, std::uint64_t seed,
                                       double radius = 3.0);

struct InvarianceCheck {
  double max_rel_dev = 0.0;
  bool passed = true;
};

InvarianceCheck check_even(const DensitySpec& d, std::size_t trials, std::uint64_t seed, double tol = 1e-12);
InvarianceCheck check_rotation_invariance(const DensitySpec& d, std::size_t trials, std::uint64_t seed,
                                          double tol = 1e-12);
/// f(x) against f(R_theta x) for `angles` random theta per sample point.
InvarianceCheck check_r_theta_invariance(const DensitySpec& d, std::size_t trials, std::uint64_t seed,
                                         std::size_t angles = 32, double tol = 1e-10);
/// Jumps |f(x + h u) - f(x)| over halving steps h against the declared modulus.
InvarianceCheck check_continuity(const DensitySpec& d, std::size_t trials, std::uint64_t seed);

// ---- radial moments ---------------------------------------------------------

/// int_0^R r^k f(r theta) dr.
Estimate radial_moment(const DensitySpec& d, std::span<const double> theta, int k, double r_max, double tol);

/// int_0^inf r^k f(r theta) dr using the family tail. Throws ConfigError if the
/// density declares no tail, InputDomainError if the integral diverges.
Estimate radial_moment_inf(const DensitySpec& d, std::span<const double> theta, int k, double tol);

}  // namespace bplab
