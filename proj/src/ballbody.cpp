#include "bplab/ballbody.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bplab/error.hpp"
#include "bplab/rng.hpp"

namespace bplab {

using nlohmann::json;

BallBodyModel::BallBodyModel(StarBody base, DensitySpec density, double tol)
    : base_(std::move(base)), density_(std::move(density)), tol_(tol) {
  if (base_.dim() != density_.dim()) throw ConfigError("ball body: body and density dimensions differ");
  if (base_.dim() < 2) throw InputDomainError("ball body needs n >= 2");
}

double BallBodyModel::radius(std::span<const double> theta, double rho_k) const {
  const int n = static_cast<int>(base_.dim());
  const Estimate e = radial_moment(density_, theta, n - 2, rho_k, tol_);
  return std::pow((n - 1) * e.value, 1.0 / (n - 1));
}

double BallBodyModel::gauge(std::span<const double> x) const {
  const double r = norm(x);
  if (r == 0.0) return 0.0;
  Vec u(x.begin(), x.end());
  for (double& v : u) v /= r;
  return r / radius(u, bplab::radial(base_, u));
}

void BallBodyModel::gauge_batch(std::span<const double> block, std::size_t count, std::span<double> out) const {
  const std::size_t n = base_.dim();
  std::vector<double> unit(block.begin(), block.end());
  std::vector<double> len(count, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < count; ++i) len[i] += unit[j * count + i] * unit[j * count + i];
  for (std::size_t i = 0; i < count; ++i) {
    len[i] = std::sqrt(len[i]);
    const double s = len[i] > 0.0 ? 1.0 / len[i] : 0.0;
    for (std::size_t j = 0; j < n; ++j) unit[j * count + i] *= s;
  }
  std::vector<double> rho(count);
  base_.model().gauge_batch(unit, count, rho);
  Vec u(n);
  for (std::size_t i = 0; i < count; ++i) {
    if (len[i] == 0.0) {
      out[i] = 0.0;
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) u[j] = unit[j * count + i];
    out[i] = len[i] / radius(u, 1.0 / rho[i]);
  }
}

json BallBodyModel::describe() const {
  return {{"base", base_.describe()}, {"density", density_.describe()}, {"radial_tol", tol_}};
}

StarBody ball_body(const StarBody& body, const DensitySpec& f, double tol) {
  auto model = std::make_shared<BallBodyModel>(body, f, tol);
  const SphereRule probe = sphere_rule(body.dim(), SphereMethod::antithetic_mc, 64, 0x6b66ULL);
  bool positive = false;
  for (std::size_t i = 0; i < probe.size() && !positive; ++i) {
    const auto theta = probe.node(i);
    positive = model->radius(theta, radial(body, theta)) > 0.0;
  }
  if (!positive) throw DegenerateBodyError("ball body: density vanishes on the body (zero measure)");
  BodyTraits traits{body.convex() && is_convex_measure(f.flags(), f.dim()),
                    body.r_theta_invariant() && f.flags().r_theta_invariant};
  return StarBody(body.dim(), BodyFamily::ball_body_of, std::move(model), traits);
}

NormAxiomCheck verify_norm_axioms(const StarBody& kf, std::size_t trials, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = kf.dim();
  NormAxiomCheck out;
  out.worst_gap = -std::numeric_limits<double>::infinity();
  Vec s(n);
  for (std::size_t t = 0; t < trials; ++t) {
    Vec x = rng.normal_vector(n);
    Vec y = rng.normal_vector(n);
    const double scale = std::exp(rng.uniform(-1.0, 1.0));
    for (double& v : y) v *= scale;
    for (std::size_t j = 0; j < n; ++j) s[j] = x[j] + y[j];
    const double gx = gauge(kf, x);
    const double gy = gauge(kf, y);
    const double gs = gauge(kf, s);
    const double gap = (gs - gx - gy) / (gx + gy);
    out.worst_gap = std::max(out.worst_gap, gap);
    if (gap > 1e-9) ++out.triangle_violations;

    const double lambda = std::exp(rng.uniform(-2.0, 2.0));
    for (double& v : x) v *= lambda;
    const double gl = gauge(kf, x);
    if (std::fabs(gl - lambda * gx) > 1e-10 * lambda * gx) ++out.homogeneity_violations;
  }
  return out;
}

namespace {

SphereRuleSpec alternate(const SphereRuleSpec& spec) {
  SphereRuleSpec alt = spec;
  if (spec.method == SphereMethod::product_gauss) alt.size = spec.size * 2;
  else alt.seed = spec.seed + 1;
  return alt;
}

}  // namespace

SectionIdentity section_identity_residual(const StarBody& body, const DensitySpec& f, std::span<const double> xi,
                                          const RuleSet& rules) {
  const StarBody kf = ball_body(body, f, std::min(rules.radial_tol, 1e-12));
  SectionIdentity out;
  out.measure_section = section_measure(body, f, xi, rules);
  out.kf_section = section_volume(kf, subsphere_rule(xi, alternate(rules.subsphere)));
  out.residual.value = std::fabs(out.kf_section.value - out.measure_section.value);
  out.residual.err = out.kf_section.err + out.measure_section.err;
  out.residual.n_evals = out.kf_section.n_evals + out.measure_section.n_evals;
  return out;
}

KlartagStudy klartag_ratio_study(const DensitySpec& f, const StarBody& body, std::size_t n_dirs,
                                 const RuleSet& rules, std::uint64_t seed) {
  if (!(f.f0() > 0.0)) throw InputDomainError("klartag study needs f(0) > 0");
  const DensitySpec g = f.f0() == 1.0 ? f : scaled_density(f, 1.0 / f.f0());
  const int n = static_cast<int>(body.dim());
  KlartagStudy out;
  Rng rng(seed);
  for (std::size_t i = 0; i < n_dirs; ++i) {
    const Vec theta = rng.unit_vector(body.dim());
    const double rho = radial(body, theta);
    const double top = radial_moment(g, theta, n - 1, rho, rules.radial_tol).value;
    const double bottom = radial_moment(g, theta, n - 2, rho, rules.radial_tol).value;
    const double r = top / std::pow(bottom, static_cast<double>(n) / (n - 1));
    out.ratios.push_back(r);
    if (!(r > 0.0) || !std::isfinite(r)) out.positive_finite = false;
  }
  if (!out.ratios.empty()) {
    const auto [lo, hi] = std::minmax_element(out.ratios.begin(), out.ratios.end());
    out.min = *lo;
    out.max = *hi;
  }
  const SphereRule rule = sphere_rule(body.dim(), rules.sphere);
  const Estimate vol = volume_of_body(ball_body(body, g, std::min(rules.radial_tol, 1e-12)), rule);
  const Estimate mu = measure_of_body(body, g, rule, rules.radial_tol);
  out.global.value = vol.value / mu.value;
  out.global.err = out.global.value * (vol.err / vol.value + mu.err / mu.value);
  out.global.n_evals = vol.n_evals + mu.n_evals;
  if (!(out.global.value > 0.0) || !std::isfinite(out.global.value)) out.positive_finite = false;
  return out;
}

}  // namespace bplab
