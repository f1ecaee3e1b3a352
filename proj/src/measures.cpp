#include "bplab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bplab/error.hpp"
#include "bplab/rng.hpp"

namespace bplab {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class LebesgueModel : public DensityModel {
 public:
  double eval(std::span<const double>) const override { return 1.0; }
  double along(std::span<const double>, double) const override { return 1.0; }
  json describe() const override { return json::object(); }
};

class GaussianModel : public DensityModel {
 public:
  explicit GaussianModel(std::vector<double> sigma) : sigma_(std::move(sigma)) {
    for (double s : sigma_) inv_var_.push_back(1.0 / (s * s));
    sigma_max_ = *std::max_element(sigma_.begin(), sigma_.end());
  }

  double eval(std::span<const double> x) const override {
    double q = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) q += x[j] * x[j] * inv_var_[j];
    return std::exp(-0.5 * q);
  }

  double along(std::span<const double> theta, double r) const override {
    double q = 0.0;
    for (std::size_t j = 0; j < theta.size(); ++j) q += theta[j] * theta[j] * inv_var_[j];
    return std::exp(-0.5 * r * r * q);
  }

  std::optional<RadialTail> tail(std::span<const double>, int k, double tol) const override {
    const double t = std::clamp(tol, 1e-300, 0.5);
    return RadialTail{sigma_max_ * std::sqrt(2.0 * (k + 2) * std::log(1.0 / t)), 0.0};
  }

  json describe() const override { return {{"sigma", sigma_}}; }

 private:
  std::vector<double> sigma_;
  std::vector<double> inv_var_;
  double sigma_max_ = 1.0;
};

class CauchyModel : public DensityModel {
 public:
  explicit CauchyModel(double p) : p_(p) {}

  double eval(std::span<const double> x) const override { return along({}, norm(x)); }

  double along(std::span<const double>, double r) const override {
    const double rp = p_ == 2.0 ? r * r : std::pow(r, p_);
    return 1.0 / (1.0 + rp);
  }

  // int_R^inf r^k / (1 + r^p) dr = sum_j (-1)^j R^{k+1-p(j+1)} / (p(j+1) - k - 1) for R > 1.
  std::optional<RadialTail> tail(std::span<const double>, int k, double tol) const override {
    if (!(p_ > k + 1.0))
      throw InputDomainError("cauchy density: int r^" + std::to_string(k) + " f dr diverges for p = " +
                             std::to_string(p_));
    const double cutoff = 8.0;
    double sum = 0.0;
    for (int j = 0; j < 400; ++j) {
      const double e = p_ * (j + 1) - k - 1.0;
      const double term = std::pow(cutoff, -e) / e;
      sum += (j % 2 == 0) ? term : -term;
      if (term <= 1e-3 * tol * std::fabs(sum)) break;
    }
    return RadialTail{cutoff, sum};
  }

  json describe() const override { return {{"p", p_}}; }

 private:
  double p_;
};

class CustomModel : public DensityModel {
 public:
  explicit CustomModel(CustomDensity spec) : spec_(std::move(spec)) {}
  double eval(std::span<const double> x) const override { return spec_.eval(x); }
  std::optional<RadialTail> tail(std::span<const double> theta, int k, double tol) const override {
    if (!spec_.tail) return std::nullopt;
    return spec_.tail(theta, k, tol);
  }
  json describe() const override { return spec_.descriptor; }

 private:
  CustomDensity spec_;
};

class SymmetrizedModel : public DensityModel {
 public:
  SymmetrizedModel(DensitySpec base, std::size_t nodes) : base_(std::move(base)), nodes_(nodes) {
    for (std::size_t j = 0; j < nodes_; ++j) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nodes_);
      cos_.push_back(std::cos(a));
      sin_.push_back(std::sin(a));
    }
  }

  double eval(std::span<const double> x) const override {
    Vec y(x.size());
    double s = 0.0;
    for (std::size_t j = 0; j < nodes_; ++j) {
      rotate(x, j, y);
      s += base_(y);
    }
    return s / static_cast<double>(nodes_);
  }

  std::optional<RadialTail> tail(std::span<const double> theta, int k, double tol) const override {
    Vec y(theta.size());
    RadialTail acc;
    for (std::size_t j = 0; j < nodes_; ++j) {
      rotate(theta, j, y);
      const auto t = base_.model().tail(y, k, tol);
      if (!t) return std::nullopt;
      if (j == 0) acc.cutoff = t->cutoff;
      if (t->cutoff != acc.cutoff) throw ConfigError("symmetrized density: base tail cutoff depends on direction");
      acc.tail += t->tail;
    }
    acc.tail /= static_cast<double>(nodes_);
    return acc;
  }

  json describe() const override { return {{"angular_nodes", nodes_}, {"base", base_.describe()}}; }

 private:
  void rotate(std::span<const double> x, std::size_t j, Vec& y) const {
    const double c = cos_[j];
    const double s = sin_[j];
    for (std::size_t k = 0; k + 1 < x.size(); k += 2) {
      y[k] = c * x[k] - s * x[k + 1];
      y[k + 1] = s * x[k] + c * x[k + 1];
    }
  }

  DensitySpec base_;
  std::size_t nodes_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

class ScaledModel : public DensityModel {
 public:
  ScaledModel(DensitySpec base, double c) : base_(std::move(base)), c_(c) {}
  double eval(std::span<const double> x) const override { return c_ * base_(x); }
  double along(std::span<const double> theta, double r) const override { return c_ * base_.along(theta, r); }
  std::optional<RadialTail> tail(std::span<const double> theta, int k, double tol) const override {
    auto t = base_.model().tail(theta, k, tol);
    if (t) t->tail *= c_;
    return t;
  }
  json describe() const override { return {{"factor", c_}, {"base", base_.describe()}}; }

 private:
  DensitySpec base_;
  double c_;
};

bool pairs_match(const std::vector<double>& sigma) {
  if (sigma.size() % 2 != 0) return false;
  for (std::size_t k = 0; k < sigma.size(); k += 2)
    if (sigma[k] != sigma[k + 1]) return false;
  return true;
}

}  // namespace

std::string concavity_name(ConcavityClass c) {
  switch (c) {
    case ConcavityClass::none: return "none";
    case ConcavityClass::convex_measure: return "convex_measure";
    case ConcavityClass::log_concave: return "log_concave";
    case ConcavityClass::s_concave: return "s_concave";
  }
  return "none";
}

std::string density_family_name(DensityFamily family) {
  switch (family) {
    case DensityFamily::lebesgue: return "lebesgue";
    case DensityFamily::gaussian: return "gaussian";
    case DensityFamily::cauchy: return "cauchy";
    case DensityFamily::custom: return "custom";
    case DensityFamily::symmetrized: return "symmetrized";
    case DensityFamily::scaled: return "scaled";
  }
  return "custom";
}

bool is_convex_measure(const DensityFlags& flags, std::size_t dim) {
  switch (flags.concavity) {
    case ConcavityClass::convex_measure:
    case ConcavityClass::log_concave: return true;
    case ConcavityClass::s_concave: return flags.s >= -1.0 / static_cast<double>(dim);
    case ConcavityClass::none: return false;
  }
  return false;
}

double DensityModel::along(std::span<const double> theta, double r) const {
  Vec x(theta.begin(), theta.end());
  for (double& v : x) v *= r;
  return eval(x);
}

std::optional<RadialTail> DensityModel::tail(std::span<const double>, int, double) const { return std::nullopt; }

DensitySpec::DensitySpec(std::size_t dim, DensityFamily family, DensityFlags flags,
                         std::shared_ptr<const DensityModel> model, double lipschitz)
    : dim_(dim), family_(family), flags_(flags), model_(std::move(model)), lipschitz_(lipschitz) {
  if (dim_ == 0) throw InputDomainError("density dimension must be positive");
  if (!model_) throw InputDomainError("density needs an oracle");
  if (!flags_.even) throw InputDomainError("only even densities are supported");
  const Vec zero(dim_, 0.0);
  f0_ = (*this)(zero);
}

void DensitySpec::negative_value(double v) {
  throw DensityIntegrityError("density oracle returned " + std::to_string(v));
}

double DensitySpec::operator()(std::span<const double> x) const {
  const double v = model_->eval(x);
  if (!(v >= 0.0)) negative_value(v);
  return v;
}

json DensitySpec::describe() const {
  json j = model_->describe();
  j["family"] = density_family_name(family_);
  j["dim"] = dim_;
  j["flags"] = {{"even", flags_.even},
                {"rotation_invariant", flags_.rotation_invariant},
                {"r_theta_invariant", flags_.r_theta_invariant},
                {"concavity", concavity_name(flags_.concavity)},
                {"s", flags_.s}};
  return j;
}

double eval_density(const DensitySpec& d, std::span<const double> x) {
  if (x.size() != d.dim()) throw InputDomainError("eval_density: point dimension mismatch");
  return d(x);
}

DensitySpec lebesgue(std::size_t dim) {
  DensityFlags flags{true, true, dim % 2 == 0, ConcavityClass::log_concave, 0.0};
  return DensitySpec(dim, DensityFamily::lebesgue, flags, std::make_shared<LebesgueModel>(), 0.0);
}

DensitySpec gaussian(std::size_t dim, std::vector<double> sigma) {
  if (sigma.empty()) sigma.assign(dim, 1.0);
  if (sigma.size() != dim) throw InputDomainError("gaussian: sigma must match the dimension");
  for (double s : sigma)
    if (!(s > 0.0) || !std::isfinite(s)) throw InputDomainError("gaussian: sigma must be positive");
  const bool iso = std::all_of(sigma.begin(), sigma.end(), [&](double s) { return s == sigma.front(); });
  DensityFlags flags{true, iso, pairs_match(sigma), ConcavityClass::log_concave, 0.0};
  const double lip = std::exp(-0.5) / *std::min_element(sigma.begin(), sigma.end());
  return DensitySpec(dim, DensityFamily::gaussian, flags, std::make_shared<GaussianModel>(std::move(sigma)), lip);
}

DensitySpec cauchy(std::size_t dim, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw InputDomainError("cauchy density needs a finite p > 0");
  const bool convex = p >= static_cast<double>(dim);
  DensityFlags flags{true, true, dim % 2 == 0, convex ? ConcavityClass::convex_measure : ConcavityClass::none, 0.0};
  double lip = kInf;
  if (p >= 1.0) {
    // sup of p r^{p-1} / (1 + r^p)^2, attained below r = 1.
    lip = 0.0;
    for (int i = 0; i <= 20000; ++i) {
      const double r = i / 10000.0;
      const double rp = std::pow(r, p);
      lip = std::max(lip, p * std::pow(r, p - 1.0) / ((1.0 + rp) * (1.0 + rp)));
    }
    lip *= 1.01;
  }
  return DensitySpec(dim, DensityFamily::cauchy, flags, std::make_shared<CauchyModel>(p), lip);
}

DensitySpec custom_density(std::size_t dim, CustomDensity spec) {
  if (!spec.eval) throw InputDomainError("custom density needs an oracle");
  const DensityFlags flags = spec.flags;
  const double lip = spec.lipschitz;
  if (!(lip >= 0.0)) throw InputDomainError("custom density needs a nonnegative modulus bound");
  return DensitySpec(dim, DensityFamily::custom, flags, std::make_shared<CustomModel>(std::move(spec)), lip);
}

DensitySpec symmetrize_complex(const DensitySpec& d, std::size_t angular_nodes) {
  if (d.dim() % 2 != 0) throw InputDomainError("symmetrize_complex needs an even dimension");
  if (angular_nodes == 0) throw InputDomainError("symmetrize_complex needs at least one angular node");
  DensityFlags flags = d.flags();
  flags.r_theta_invariant = true;
  // Averages of concave-type functions need not keep the class unless f is already invariant.
  if (!d.flags().r_theta_invariant && !d.flags().rotation_invariant) {
    flags.concavity = ConcavityClass::none;
    flags.s = 0.0;
  }
  return DensitySpec(d.dim(), DensityFamily::symmetrized, flags, std::make_shared<SymmetrizedModel>(d, angular_nodes),
                     d.lipschitz());
}

DensitySpec scaled_density(const DensitySpec& d, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InputDomainError("density scale factor must be positive");
  return DensitySpec(d.dim(), DensityFamily::scaled, d.flags(), std::make_shared<ScaledModel>(d, c),
                     c * d.lipschitz());
}

// ---- checks ---------------------------------------------------------------

namespace {

Vec cube_point(Rng& rng, std::size_t dim, double radius) {
  Vec x(dim);
  for (double& v : x) v = rng.uniform(-radius, radius);
  return x;
}

double rel_dev(double a, double b) {
  const double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
  return std::fabs(a - b) / scale;
}

}  // namespace

ConcavityCheck check_neg_inv_n_concave(const DensitySpec& d, std::size_t trials, std::uint64_t seed, double radius) {
  Rng rng(seed);
  const std::size_t n = d.dim();
  const double e = -1.0 / static_cast<double>(n);
  ConcavityCheck out;
  out.worst_gap = -kInf;
  Vec z(n);
  for (std::size_t t = 0; t < trials; ++t) {
    const Vec x = cube_point(rng, n, radius);
    const Vec y = cube_point(rng, n, radius);
    const double lambda = rng.uniform();
    const double fx = d(x);
    const double fy = d(y);
    if (!(fx > 0.0) || !(fy > 0.0)) continue;
    for (std::size_t j = 0; j < n; ++j) z[j] = lambda * x[j] + (1.0 - lambda) * y[j];
    const double fz = d(z);
    const double rhs = lambda * std::pow(fx, e) + (1.0 - lambda) * std::pow(fy, e);
    const double lhs = fz > 0.0 ? std::pow(fz, e) : kInf;
    const double gap = (lhs - rhs) / rhs;
    ++out.tested;
    out.worst_gap = std::max(out.worst_gap, gap);
    if (gap > 1e-9) ++out.violations;
  }
  if (out.tested == 0) throw InputDomainError("concavity check: no sample pair with positive density");
  return out;
}

InvarianceCheck check_even(const DensitySpec& d, std::size_t trials, std::uint64_t seed, double tol) {
  Rng rng(seed);
  InvarianceCheck out;
  for (std::size_t t = 0; t < trials; ++t) {
    Vec x = cube_point(rng, d.dim(), 3.0);
    const double a = d(x);
    for (double& v : x) v = -v;
    out.max_rel_dev = std::max(out.max_rel_dev, rel_dev(a, d(x)));
  }
  out.passed = out.max_rel_dev <= tol;
  return out;
}

InvarianceCheck check_rotation_invariance(const DensitySpec& d, std::size_t trials, std::uint64_t seed, double tol) {
  Rng rng(seed);
  InvarianceCheck out;
  for (std::size_t t = 0; t < trials; ++t) {
    const Vec x = cube_point(rng, d.dim(), 3.0);
    const double r = norm(x);
    Vec u = rng.unit_vector(d.dim());
    for (double& v : u) v *= r;
    out.max_rel_dev = std::max(out.max_rel_dev, rel_dev(d(x), d(u)));
  }
  out.passed = out.max_rel_dev <= tol;
  return out;
}

InvarianceCheck check_r_theta_invariance(const DensitySpec& d, std::size_t trials, std::uint64_t seed,
                                         std::size_t angles, double tol) {
  if (d.dim() % 2 != 0) throw InputDomainError("R_theta invariance needs an even dimension");
  Rng rng(seed);
  InvarianceCheck out;
  for (std::size_t t = 0; t < trials; ++t) {
    const Vec x = cube_point(rng, d.dim(), 3.0);
    const double a = d(x);
    for (std::size_t k = 0; k < angles; ++k) {
      const Vec y = rotate_pairs(x, rng.uniform(0.0, 2.0 * std::numbers::pi));
      out.max_rel_dev = std::max(out.max_rel_dev, rel_dev(a, d(y)));
    }
  }
  out.passed = out.max_rel_dev <= tol;
  return out;
}

InvarianceCheck check_continuity(const DensitySpec& d, std::size_t trials, std::uint64_t seed) {
  Rng rng(seed);
  InvarianceCheck out;
  const std::size_t n = d.dim();
  for (std::size_t t = 0; t < trials; ++t) {
    const Vec x = cube_point(rng, n, 3.0);
    const Vec u = rng.unit_vector(n);
    const double fx = d(x);
    Vec y(n);
    for (double h = 1e-3; h >= 1e-9; h *= 0.125) {
      for (std::size_t j = 0; j < n; ++j) y[j] = x[j] + h * u[j];
      const double jump = std::fabs(d(y) - fx);
      const double bound = std::isinf(d.lipschitz()) ? 1e-6 * std::max(1.0, fx) : d.lipschitz() * h * (1.0 + 1e-6);
      const double excess = (jump - bound) / std::max(1.0, fx);
      out.max_rel_dev = std::max(out.max_rel_dev, excess);
      if (jump > bound + 1e-14 * std::max(1.0, fx)) out.passed = false;
      if (std::isinf(d.lipschitz())) break;
    }
  }
  return out;
}

// ---- radial moments -------------------------------------------------------

Estimate radial_moment(const DensitySpec& d, std::span<const double> theta, int k, double r_max, double tol) {
  return radial_integral_t([&](double r) { return d.along(theta, r); }, k, r_max, tol);
}

Estimate radial_moment_inf(const DensitySpec& d, std::span<const double> theta, int k, double tol) {
  const auto t = d.model().tail(theta, k, tol);
  if (!t)
    throw ConfigError("density '" + density_family_name(d.family()) +
                      "' declares no tail bound; infinite radial ranges need one");
  Estimate e = radial_moment(d, theta, k, t->cutoff, tol);
  e.value += t->tail;
  return e;
}

}  // namespace bplab
