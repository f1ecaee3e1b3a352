#pragma once

// Origin-symmetric star bodies represented by gauge / radial-function oracles.

#include <Eigen/Dense>
#include "json.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bplab/linalg.hpp"

namespace bplab {

enum class BodyFamily {
  lp_ball,
  ellipsoid,
  polytope,
  linear_image,
  intersection_body_of,
  zonal,
  ball_body_of,
  complex_lp_ball,
};

std::string family_name(BodyFamily family);

/// Gauge oracle behind a StarBody. Implementations are immutable and reentrant.
class BodyModel {
 public:
  virtual ~BodyModel() = default;

  /// Minkowski functional; positively homogeneous of degree 1.
  virtual double gauge(std::span<const double> x) const = 0;

  /// Gauges of `count` points stored coordinate-major. The default loops over gauge().
  virtual void gauge_batch(std::span<const double> block, std::size_t count, std::span<double> out) const;

  /// Family-specific parameters (without "family" and "dim").
  virtual nlohmann::json describe() const = 0;
};

struct BodyTraits {
  bool convex = false;
  bool r_theta_invariant = false;
};

class StarBody {
 public:
  StarBody(std::size_t dim, BodyFamily family, std::shared_ptr<const BodyModel> model, BodyTraits traits);

  std::size_t dim() const { return dim_; }
  BodyFamily family() const { return family_; }
  bool convex() const { return traits_.convex; }
  bool r_theta_invariant() const { return traits_.r_theta_invariant; }
  const BodyTraits& traits() const { return traits_; }
  const BodyModel& model() const { return *model_; }

  template <class Model>
  const Model* model_as() const {
    return dynamic_cast<const Model*>(model_.get());
  }

  /// {"family": ..., "dim": n, params...}
  nlohmann::json describe() const;

 private:
  std::size_t dim_;
  BodyFamily family_;
  std::shared_ptr<const BodyModel> model_;
  BodyTraits traits_;
};

// ---- family models --------------------------------------------------------

/// {x : (sum_j |x_j / s_j|^p)^{1/p} <= 1}; p = inf gives a box.
class LpBallModel : public BodyModel {
 public:
  LpBallModel(double p, std::vector<double> semi_axes);
  double gauge(std::span<const double> x) const override;
  void gauge_batch(std::span<const double> block, std::size_t count, std::span<double> out) const override;
  nlohmann::json describe() const override;

  double p() const { return p_; }
  const std::vector<double>& semi_axes() const { return semi_axes_; }
  bool isotropic() const;

 private:
  double p_;
  std::vector<double> semi_axes_;
  std::vector<double> inv_axes_;
};

/// {x : x^T A x <= 1}, A symmetric positive definite.
class EllipsoidModel : public BodyModel {
 public:
  explicit EllipsoidModel(Eigen::MatrixXd a);
  double gauge(std::span<const double> x) const override;
  void gauge_batch(std::span<const double> block, std::size_t count, std::span<double> out) const override;
  nlohmann::json describe() const override;

  const Eigen::MatrixXd& matrix() const { return a_; }

 private:
  Eigen::MatrixXd a_;
  std::vector<double> flat_;
};

/// {x : <a_i, x> <= b_i for all i}, halfspaces in +- pairs.
class PolytopeModel : public BodyModel {
 public:
  PolytopeModel(std::vector<Vec> normals, std::vector<double> offsets);
  double gauge(std::span<const double> x) const override;
  void gauge_batch(std::span<const double> block, std::size_t count, std::span<double> out) const override;
  nlohmann::json describe() const override;

  const std::vector<Vec>& normals() const { return normals_; }
  const std::vector<double>& offsets() const { return offsets_; }

 private:
  std::vector<Vec> normals_;
  std::vector<double> offsets_;
  std::vector<double> flat_normals_;
  std::vector<double> inv_offsets_;
};

/// T K: gauge x -> ||T^{-1} x||_K.
class LinearImageModel : public BodyModel {
 public:
  LinearImageModel(Eigen::MatrixXd t, StarBody base);
  double gauge(std::span<const double> x) const override;
  void gauge_batch(std::span<const double> block, std::size_t count, std::span<double> out) const override;
  nlohmann::json describe() const override;

  const Eigen::MatrixXd& matrix() const { return t_; }
  const Eigen::MatrixXd& inverse() const { return t_inv_; }
  const StarBody& base() const { return base_; }

 private:
  Eigen::MatrixXd t_;
  Eigen::MatrixXd t_inv_;
  std::vector<double> flat_inv_;
  StarBody base_;
};

/// Radius profile t -> rho(t), t = <theta, axis>, even on [-1, 1].
struct ZonalProfile {
  std::function<double(double)> radius;
  nlohmann::json descriptor;
};

/// Body of revolution {x : (|x_perp| / a)^p + (|x_axis| / c)^p <= 1}; p = 2 is an ellipsoid.
ZonalProfile lp_revolution_profile(double p, double equatorial, double polar);

class ZonalModel : public BodyModel {
 public:
  ZonalModel(Vec axis, ZonalProfile profile);
  double gauge(std::span<const double> x) const override;
  nlohmann::json describe() const override;

  const Vec& axis() const { return axis_; }
  const ZonalProfile& profile() const { return profile_; }
  double radius_at(double t) const { return profile_.radius(t); }

 private:
  Vec axis_;
  ZonalProfile profile_;
};

/// {z in C^m : (sum_k (|z_k| / s_k)^p)^{1/p} <= 1} in R^{2m}, interleaved coordinates.
class ComplexLpBallModel : public BodyModel {
 public:
  ComplexLpBallModel(double p, std::vector<double> moduli_scales);
  double gauge(std::span<const double> x) const override;
  void gauge_batch(std::span<const double> block, std::size_t count, std::span<double> out) const override;
  nlohmann::json describe() const override;

  double p() const { return p_; }
  const std::vector<double>& scales() const { return scales_; }

 private:
  double p_;
  std::vector<double> scales_;
  std::vector<double> inv_scales_;
};

/// Body given directly by a radial oracle on the unit sphere.
class RadialOracleModel : public BodyModel {
 public:
  RadialOracleModel(std::function<double(std::span<const double>)> radial, nlohmann::json descriptor);
  double gauge(std::span<const double> x) const override;
  nlohmann::json describe() const override;

 private:
  std::function<double(std::span<const double>)> radial_;
  nlohmann::json descriptor_;
};

// ---- constructors ---------------------------------------------------------

StarBody lp_ball(std::size_t dim, double p, std::vector<double> semi_axes = {});
StarBody cube(std::size_t dim, double half_width = 1.0);
StarBody euclidean_ball(std::size_t dim, double radius = 1.0);
StarBody cross_polytope(std::size_t dim);
StarBody ellipsoid(const Eigen::MatrixXd& a);
StarBody ellipsoid_from_semi_axes(const std::vector<double>& semi_axes);
StarBody polytope(std::vector<Vec> normals, std::vector<double> offsets);
StarBody zonal_body(Vec axis, ZonalProfile profile, bool convex);
StarBody complex_lp_ball(std::size_t complex_dim, double p, std::vector<double> moduli_scales = {});
StarBody radial_oracle_body(std::size_t dim, BodyFamily family, std::function<double(std::span<const double>)> radial,
                            nlohmann::json descriptor, BodyTraits traits);

/// T K with ||x||_{TK} = ||T^{-1} x||_K. Throws InputDomainError for singular T.
StarBody linear_image(const StarBody& body, const Eigen::MatrixXd& t);

/// s K. Keeps the family (and therefore its analytic metadata) where possible.
StarBody scaled(const StarBody& body, double s);

// ---- operations -----------------------------------------------------------

/// rho_K(theta) for |theta| = 1 (within 1e-12).
double radial(const StarBody& body, std::span<const double> theta);

/// ||x||_K; zero at the origin.
double gauge(const StarBody& body, std::span<const double> x);

/// rho_K at `count` unit points stored coordinate-major.
void radial_batch(const StarBody& body, std::span<const double> block, std::size_t count, std::span<double> out);

struct DistanceBound {
  double d = 1.0;
  Eigen::MatrixXd normalization;
  /// True when d comes from a closed form; false for the sampled whitening bound.
  bool analytic = false;
};

/// Upper bound on the geometric distance from normalization * K to a Euclidean ball.
DistanceBound ball_distance_bound(const StarBody& body, std::uint64_t seed = 0x5eedULL);

struct ComplexDirection {
  Vec xi;
  std::vector<Vec> basis;  // orthonormal basis of the real form of H_xi
};

/// Real form of the complex hyperplane orthogonal to xi in R^{2m}.
ComplexDirection complex_direction(std::span<const double> xi);

}  // namespace bplab
