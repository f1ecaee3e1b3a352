#include "bplab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "bplab/error.hpp"
#include "bplab/kernels.hpp"
#include "bplab/quadrature.hpp"

namespace bplab {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

json p_to_json(double p) { return std::isinf(p) ? json("inf") : json(p); }

double lp_of(std::span<const double> t, double p) {
  double m = 0.0;
  for (double v : t) m = std::max(m, std::fabs(v));
  if (m == 0.0 || std::isinf(p)) return m;
  double s = 0.0;
  for (double v : t) s += std::pow(std::fabs(v) / m, p);
  return m * std::pow(s, 1.0 / p);
}

kernels::NormKind norm_kind(double p, bool& ok) {
  ok = true;
  if (p == 1.0) return kernels::NormKind::l1;
  if (p == 2.0) return kernels::NormKind::l2;
  if (std::isinf(p)) return kernels::NormKind::linf;
  ok = false;
  return kernels::NormKind::l2;
}

std::vector<double> to_flat(const Eigen::MatrixXd& m) {
  std::vector<double> out(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out[static_cast<std::size_t>(r * m.cols() + c)] = m(r, c);
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

void check_positive(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!(x > 0.0) || !std::isfinite(x)) throw InputDomainError(std::string(what) + " must be positive and finite");
}

// Does T commute with the pair rotation J (i.e. is T complex-linear)?
bool commutes_with_j(const Eigen::MatrixXd& t) {
  const Eigen::Index n = t.rows();
  if (n % 2 != 0) return false;
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; k += 2) {
    j(k, k + 1) = -1.0;
    j(k + 1, k) = 1.0;
  }
  return (t * j - j * t).norm() <= 1e-12 * std::max(1.0, t.norm());
}

}  // namespace

std::string family_name(BodyFamily family) {
  switch (family) {
    case BodyFamily::lp_ball: return "lp_ball";
    case BodyFamily::ellipsoid: return "ellipsoid";
    case BodyFamily::polytope: return "polytope";
    case BodyFamily::linear_image: return "linear_image";
    case BodyFamily::intersection_body_of: return "intersection_body_of";
    case BodyFamily::zonal: return "zonal";
    case BodyFamily::ball_body_of: return "ball_body_of";
    case BodyFamily::complex_lp_ball: return "complex_lp_ball";
  }
  return "unknown";
}

void BodyModel::gauge_batch(std::span<const double> block, std::size_t count, std::span<double> out) const {
  const std::size_t dim = count == 0 ? 0 : block.size() / count;
  Vec x(dim);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < dim; ++j) x[j] = block[j * count + i];
    out[i] = gauge(x);
  }
}

StarBody::StarBody(std::size_t dim, BodyFamily family, std::shared_ptr<const BodyModel> model, BodyTraits traits)
    : dim_(dim), family_(family), model_(std::move(model)), traits_(traits) {
  if (dim_ == 0) throw InputDomainError("body dimension must be positive");
  if (!model_) throw InputDomainError("body needs a gauge model");
}

json StarBody::describe() const {
  json j = model_->describe();
  j["family"] = family_name(family_);
  j["dim"] = dim_;
  return j;
}

// ---- lp ball ---------------------------------------------------------------

LpBallModel::LpBallModel(double p, std::vector<double> semi_axes) : p_(p), semi_axes_(std::move(semi_axes)) {
  if (!(p_ > 0.0)) throw InputDomainError("lp ball needs p > 0");
  check_positive(semi_axes_, "lp ball semi-axes");
  for (double s : semi_axes_) inv_axes_.push_back(1.0 / s);
}

bool LpBallModel::isotropic() const {
  return std::all_of(semi_axes_.begin(), semi_axes_.end(), [&](double s) { return s == semi_axes_.front(); });
}

double LpBallModel::gauge(std::span<const double> x) const {
  double out = 0.0;
  gauge_batch(x, 1, {&out, 1});
  return out;
}

void LpBallModel::gauge_batch(std::span<const double> block, std::size_t count, std::span<double> out) const {
  bool ok = false;
  const kernels::NormKind kind = norm_kind(p_, ok);
  if (ok) {
    kernels::norm_batch(kind, inv_axes_, block, count, out);
    return;
  }
  Vec t(inv_axes_.size());
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) t[j] = block[j * count + i] * inv_axes_[j];
    out[i] = lp_of(t, p_);
  }
}

json LpBallModel::describe() const { return {{"p", p_to_json(p_)}, {"semi_axes", semi_axes_}}; }

// ---- ellipsoid ------------------------------------------------------------

EllipsoidModel::EllipsoidModel(Eigen::MatrixXd a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols() || a_.rows() == 0) throw InputDomainError("ellipsoid matrix must be square");
  if ((a_ - a_.transpose()).norm() > 1e-12 * a_.norm()) throw InputDomainError("ellipsoid matrix must be symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(a_);
  if (llt.info() != Eigen::Success) throw InputDomainError("ellipsoid matrix must be positive definite");
  flat_ = to_flat(a_);
}

double EllipsoidModel::gauge(std::span<const double> x) const {
  double out = 0.0;
  gauge_batch(x, 1, {&out, 1});
  return out;
}

void EllipsoidModel::gauge_batch(std::span<const double> block, std::size_t count, std::span<double> out) const {
  kernels::quadratic_gauge_batch(flat_, static_cast<std::size_t>(a_.rows()), block, count, out);
}

json EllipsoidModel::describe() const { return {{"matrix", matrix_to_json(a_)}}; }

// ---- polytope -------------------------------------------------------------

PolytopeModel::PolytopeModel(std::vector<Vec> normals, std::vector<double> offsets)
    : normals_(std::move(normals)), offsets_(std::move(offsets)) {
  if (normals_.empty() || normals_.size() != offsets_.size())
    throw InputDomainError("polytope needs matching normals and offsets");
  check_positive(offsets_, "polytope offsets");
  const std::size_t dim = normals_.front().size();
  for (std::size_t i = 0; i < normals_.size(); ++i) {
    if (normals_[i].size() != dim) throw InputDomainError("polytope normals must share a dimension");
    bool paired = false;
    for (std::size_t k = 0; k < normals_.size() && !paired; ++k) {
      if (std::abs(offsets_[k] - offsets_[i]) > 1e-12 * offsets_[i]) continue;
      double diff = 0.0;
      for (std::size_t j = 0; j < dim; ++j) diff = std::max(diff, std::abs(normals_[k][j] + normals_[i][j]));
      paired = diff <= 1e-12 * std::max(1.0, norm(normals_[i]));
    }
    if (!paired) throw InputDomainError("polytope halfspaces must come in +- pairs (origin symmetry)");
    flat_normals_.insert(flat_normals_.end(), normals_[i].begin(), normals_[i].end());
    inv_offsets_.push_back(1.0 / offsets_[i]);
  }
}

double PolytopeModel::gauge(std::span<const double> x) const {
  double out = 0.0;
  gauge_batch(x, 1, {&out, 1});
  return out;
}

void PolytopeModel::gauge_batch(std::span<const double> block, std::size_t count, std::span<double> out) const {
  kernels::halfspace_gauge_batch(flat_normals_, inv_offsets_, normals_.front().size(), block, count, out);
}

json PolytopeModel::describe() const { return {{"normals", normals_}, {"offsets", offsets_}}; }

// ---- linear image ---------------------------------------------------------

LinearImageModel::LinearImageModel(Eigen::MatrixXd t, StarBody base) : t_(std::move(t)), base_(std::move(base)) {
  if (t_.rows() != t_.cols() || static_cast<std::size_t>(t_.rows()) != base_.dim())
    throw InputDomainError("linear image: matrix must be square and match the body dimension");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(t_);
  if (!lu.isInvertible() || std::abs(lu.determinant()) <= 1e-14 * std::pow(std::max(1.0, t_.norm()), t_.rows()))
    throw InputDomainError("linear image: matrix is singular");
  t_inv_ = lu.inverse();
  flat_inv_ = to_flat(t_inv_);
}

double LinearImageModel::gauge(std::span<const double> x) const {
  double out = 0.0;
  gauge_batch(x, 1, {&out, 1});
  return out;
}

void LinearImageModel::gauge_batch(std::span<const double> block, std::size_t count, std::span<double> out) const {
  const std::size_t n = base_.dim();
  std::vector<double> mapped(n * count);
  kernels::matvec_batch(flat_inv_, n, n, block, count, mapped);
  base_.model().gauge_batch(mapped, count, out);
}

json LinearImageModel::describe() const { return {{"matrix", matrix_to_json(t_)}, {"base", base_.describe()}}; }

// ---- zonal ----------------------------------------------------------------

ZonalProfile lp_revolution_profile(double p, double equatorial, double polar) {
  if (!(p > 0.0) || !(equatorial > 0.0) || !(polar > 0.0))
    throw InputDomainError("revolution profile needs positive p and semi-axes");
  ZonalProfile prof;
  prof.radius = [p, equatorial, polar](double t) {
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    const double u[2] = {s / equatorial, std::fabs(t) / polar};
    return 1.0 / lp_of(u, p);
  };
  prof.descriptor = {{"kind", "lp_revolution"}, {"p", p_to_json(p)}, {"equatorial", equatorial}, {"polar", polar}};
  return prof;
}

ZonalModel::ZonalModel(Vec axis, ZonalProfile profile) : axis_(normalized(axis)), profile_(std::move(profile)) {
  if (!profile_.radius) throw InputDomainError("zonal body needs a radius profile");
  for (int i = 0; i <= 32; ++i) {
    const double t = i / 32.0;
    const double a = profile_.radius(t);
    const double b = profile_.radius(-t);
    if (!(a > 0.0) || !std::isfinite(a)) throw BodyIntegrityError("zonal profile must be positive and finite");
    if (std::abs(a - b) > 1e-12 * a) throw BodyIntegrityError("zonal profile must be even");
  }
}

double ZonalModel::gauge(std::span<const double> x) const {
  const double r = norm(x);
  if (r == 0.0) return 0.0;
  const double t = std::clamp(dot(x, axis_) / r, -1.0, 1.0);
  return r / profile_.radius(t);
}

json ZonalModel::describe() const { return {{"axis", axis_}, {"profile", profile_.descriptor}}; }

// ---- complex lp ball ------------------------------------------------------

ComplexLpBallModel::ComplexLpBallModel(double p, std::vector<double> moduli_scales)
    : p_(p), scales_(std::move(moduli_scales)) {
  if (!(p_ > 0.0)) throw InputDomainError("complex lp ball needs p > 0");
  check_positive(scales_, "complex lp ball scales");
  for (double s : scales_) inv_scales_.push_back(1.0 / s);
}

double ComplexLpBallModel::gauge(std::span<const double> x) const {
  double out = 0.0;
  gauge_batch(x, 1, {&out, 1});
  return out;
}

void ComplexLpBallModel::gauge_batch(std::span<const double> block, std::size_t count, std::span<double> out) const {
  const std::size_t m = scales_.size();
  std::vector<double> moduli(m * count);
  kernels::pair_modulus_batch(block, m, count, moduli);
  bool ok = false;
  const kernels::NormKind kind = norm_kind(p_, ok);
  if (ok) {
    kernels::norm_batch(kind, inv_scales_, moduli, count, out);
    return;
  }
  Vec t(m);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t k = 0; k < m; ++k) t[k] = moduli[k * count + i] * inv_scales_[k];
    out[i] = lp_of(t, p_);
  }
}

json ComplexLpBallModel::describe() const { return {{"p", p_to_json(p_)}, {"scales", scales_}}; }

// ---- radial oracle --------------------------------------------------------

RadialOracleModel::RadialOracleModel(std::function<double(std::span<const double>)> radial, json descriptor)
    : radial_(std::move(radial)), descriptor_(std::move(descriptor)) {}

double RadialOracleModel::gauge(std::span<const double> x) const {
  const double r = norm(x);
  if (r == 0.0) return 0.0;
  Vec u(x.begin(), x.end());
  for (double& v : u) v /= r;
  return r / radial_(u);
}

json RadialOracleModel::describe() const { return descriptor_; }

// ---- constructors ---------------------------------------------------------

StarBody lp_ball(std::size_t dim, double p, std::vector<double> semi_axes) {
  if (semi_axes.empty()) semi_axes.assign(dim, 1.0);
  if (semi_axes.size() != dim) throw InputDomainError("lp ball: semi-axes must match the dimension");
  auto model = std::make_shared<LpBallModel>(p, std::move(semi_axes));
  BodyTraits traits{p >= 1.0, p == 2.0 && model->isotropic() && dim % 2 == 0};
  return StarBody(dim, BodyFamily::lp_ball, std::move(model), traits);
}

StarBody cube(std::size_t dim, double half_width) { return lp_ball(dim, kInf, std::vector<double>(dim, half_width)); }

StarBody euclidean_ball(std::size_t dim, double radius) { return lp_ball(dim, 2.0, std::vector<double>(dim, radius)); }

StarBody cross_polytope(std::size_t dim) { return lp_ball(dim, 1.0); }

StarBody ellipsoid(const Eigen::MatrixXd& a) {
  auto model = std::make_shared<EllipsoidModel>(a);
  const auto dim = static_cast<std::size_t>(a.rows());
  return StarBody(dim, BodyFamily::ellipsoid, std::move(model), BodyTraits{true, commutes_with_j(a)});
}

StarBody ellipsoid_from_semi_axes(const std::vector<double>& semi_axes) {
  check_positive(semi_axes, "ellipsoid semi-axes");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(semi_axes.size()),
                                            static_cast<Eigen::Index>(semi_axes.size()));
  for (std::size_t i = 0; i < semi_axes.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    a(k, k) = 1.0 / (semi_axes[i] * semi_axes[i]);
  }
  return ellipsoid(a);
}

StarBody polytope(std::vector<Vec> normals, std::vector<double> offsets) {
  auto model = std::make_shared<PolytopeModel>(std::move(normals), std::move(offsets));
  const std::size_t dim = model->normals().front().size();
  return StarBody(dim, BodyFamily::polytope, std::move(model), BodyTraits{true, false});
}

StarBody zonal_body(Vec axis, ZonalProfile profile, bool convex) {
  const std::size_t dim = axis.size();
  auto model = std::make_shared<ZonalModel>(std::move(axis), std::move(profile));
  return StarBody(dim, BodyFamily::zonal, std::move(model), BodyTraits{convex, false});
}

StarBody complex_lp_ball(std::size_t complex_dim, double p, std::vector<double> moduli_scales) {
  if (moduli_scales.empty()) moduli_scales.assign(complex_dim, 1.0);
  if (moduli_scales.size() != complex_dim) throw InputDomainError("complex lp ball: scales must match the dimension");
  auto model = std::make_shared<ComplexLpBallModel>(p, std::move(moduli_scales));
  return StarBody(2 * complex_dim, BodyFamily::complex_lp_ball, std::move(model), BodyTraits{p >= 1.0, true});
}

StarBody radial_oracle_body(std::size_t dim, BodyFamily family, std::function<double(std::span<const double>)> radial,
                            json descriptor, BodyTraits traits) {
  auto model = std::make_shared<RadialOracleModel>(std::move(radial), std::move(descriptor));
  return StarBody(dim, family, std::move(model), traits);
}

StarBody linear_image(const StarBody& body, const Eigen::MatrixXd& t) {
  auto model = std::make_shared<LinearImageModel>(t, body);
  BodyTraits traits{body.convex(), body.r_theta_invariant() && commutes_with_j(t)};
  return StarBody(body.dim(), BodyFamily::linear_image, std::move(model), traits);
}

StarBody scaled(const StarBody& body, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw InputDomainError("scale factor must be positive and finite");
  if (const auto* lp = body.model_as<LpBallModel>()) {
    std::vector<double> axes = lp->semi_axes();
    for (double& a : axes) a *= s;
    return lp_ball(body.dim(), lp->p(), std::move(axes));
  }
  if (const auto* el = body.model_as<EllipsoidModel>()) return ellipsoid(el->matrix() / (s * s));
  if (const auto* poly = body.model_as<PolytopeModel>()) {
    std::vector<double> offsets = poly->offsets();
    for (double& b : offsets) b *= s;
    return polytope(poly->normals(), std::move(offsets));
  }
  if (const auto* c = body.model_as<ComplexLpBallModel>()) {
    std::vector<double> scales = c->scales();
    for (double& a : scales) a *= s;
    return complex_lp_ball(body.dim() / 2, c->p(), std::move(scales));
  }
  if (const auto* z = body.model_as<ZonalModel>()) {
    ZonalProfile prof;
    const auto base = z->profile().radius;
    prof.radius = [base, s](double t) { return s * base(t); };
    prof.descriptor = z->profile().descriptor;
    if (prof.descriptor.value("kind", "") == "lp_revolution") {
      prof.descriptor["equatorial"] = prof.descriptor["equatorial"].get<double>() * s;
      prof.descriptor["polar"] = prof.descriptor["polar"].get<double>() * s;
    } else {
      prof.descriptor = {{"kind", "scaled"}, {"scale", s}, {"base", z->profile().descriptor}};
    }
    return zonal_body(z->axis(), std::move(prof), body.convex());
  }
  const auto n = static_cast<Eigen::Index>(body.dim());
  return linear_image(body, s * Eigen::MatrixXd::Identity(n, n));
}

// ---- operations -----------------------------------------------------------

double gauge(const StarBody& body, std::span<const double> x) {
  if (x.size() != body.dim()) throw InputDomainError("gauge: point dimension mismatch");
  const double g = body.model().gauge(x);
  if (!(g >= 0.0) || std::isnan(g)) throw BodyIntegrityError("gauge oracle returned a negative or NaN value");
  return g;
}

double radial(const StarBody& body, std::span<const double> theta) {
  if (theta.size() != body.dim()) throw InputDomainError("radial: direction dimension mismatch");
  if (std::abs(norm(theta) - 1.0) > 1e-12) throw InputDomainError("radial: direction must be a unit vector");
  const double r = 1.0 / body.model().gauge(theta);
  if (!(r > 0.0) || !std::isfinite(r)) throw BodyIntegrityError("radial function must be positive and finite");
  return r;
}

void radial_batch(const StarBody& body, std::span<const double> block, std::size_t count, std::span<double> out) {
  if (block.size() != body.dim() * count || out.size() < count)
    throw InputDomainError("radial_batch: block does not match the body dimension");
  body.model().gauge_batch(block, count, out);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = 1.0 / out[i];
    if (!(r > 0.0) || !std::isfinite(r)) throw BodyIntegrityError("radial function must be positive and finite");
    out[i] = r;
  }
}

namespace {

std::optional<DistanceBound> analytic_bound(const StarBody& body) {
  const auto n = static_cast<Eigen::Index>(body.dim());
  const double dn = static_cast<double>(body.dim());
  if (const auto* lp = body.model_as<LpBallModel>()) {
    DistanceBound b;
    b.normalization = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) b.normalization(i, i) = 1.0 / lp->semi_axes()[static_cast<std::size_t>(i)];
    const double e = std::isinf(lp->p()) ? 0.5 : std::abs(0.5 - 1.0 / lp->p());
    b.d = std::pow(dn, e);
    b.analytic = true;
    return b;
  }
  if (const auto* c = body.model_as<ComplexLpBallModel>()) {
    DistanceBound b;
    b.normalization = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) b.normalization(i, i) = 1.0 / c->scales()[static_cast<std::size_t>(i / 2)];
    const double e = std::isinf(c->p()) ? 0.5 : std::abs(0.5 - 1.0 / c->p());
    b.d = std::pow(dn / 2.0, e);
    b.analytic = true;
    return b;
  }
  if (const auto* el = body.model_as<EllipsoidModel>()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(el->matrix());
    DistanceBound b;
    b.normalization = es.operatorSqrt();
    b.d = 1.0;
    b.analytic = true;
    return b;
  }
  if (const auto* li = body.model_as<LinearImageModel>()) {
    if (auto inner = analytic_bound(li->base())) {
      inner->normalization = inner->normalization * li->inverse();
      return inner;
    }
  }
  return std::nullopt;
}

}  // namespace

DistanceBound ball_distance_bound(const StarBody& body, std::uint64_t seed) {
  if (auto b = analytic_bound(body)) return *b;

  // Whitening by the inertia matrix of K (int_K x x^T dx is proportional to
  // int_S rho^{n+2} theta theta^T), then max / min sampled radius.
  const std::size_t n = body.dim();
  const SphereRule rule = sphere_rule(n, SphereMethod::antithetic_mc, 10000, seed);
  std::vector<double> rho(rule.size());
  radial_batch(body, rule.block(), rule.size(), rho);
  const auto en = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd inertia = Eigen::MatrixXd::Zero(en, en);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto u = rule.node(i);
    const double w = rule.weights()[i] * std::pow(rho[i], static_cast<double>(n + 2));
    for (Eigen::Index a = 0; a < en; ++a)
      for (Eigen::Index b = 0; b < en; ++b)
        inertia(a, b) += w * u[static_cast<std::size_t>(a)] * u[static_cast<std::size_t>(b)];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(inertia);
  if (es.eigenvalues().minCoeff() <= 0.0) throw BodyIntegrityError("ball distance: degenerate inertia matrix");
  DistanceBound b;
  b.normalization = es.operatorInverseSqrt();
  const StarBody normalized_body = linear_image(body, b.normalization);
  radial_batch(normalized_body, rule.block(), rule.size(), rho);
  const auto [lo, hi] = std::minmax_element(rho.begin(), rho.end());
  if (!std::isfinite(*hi / *lo)) throw BodyIntegrityError("ball distance: unbounded radius ratio");
  b.d = *hi / *lo;
  b.analytic = false;
  return b;
}

ComplexDirection complex_direction(std::span<const double> xi) {
  if (xi.size() % 2 != 0 || xi.empty()) throw InputDomainError("complex direction needs an even dimension");
  if (std::abs(norm(xi) - 1.0) > 1e-10) throw InputDomainError("complex direction must be a unit vector");
  ComplexDirection cd;
  cd.xi.assign(xi.begin(), xi.end());
  cd.basis = orthonormal_complement({cd.xi, apply_j(cd.xi)}, xi.size());
  return cd;
}

}  // namespace bplab
