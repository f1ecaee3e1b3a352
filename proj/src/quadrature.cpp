#include "bplab/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "bplab/error.hpp"
#include "bplab/kernels.hpp"
#include "bplab/rng.hpp"

namespace bplab {

std::string method_name(SphereMethod method) {
  switch (method) {
    case SphereMethod::monte_carlo: return "monte_carlo";
    case SphereMethod::antithetic_mc: return "antithetic_mc";
    case SphereMethod::product_gauss: return "product_gauss";
  }
  return "unknown";
}

SphereMethod parse_method(const std::string& name) {
  if (name == "monte_carlo" || name == "mc") return SphereMethod::monte_carlo;
  if (name == "antithetic_mc" || name == "antithetic") return SphereMethod::antithetic_mc;
  if (name == "product_gauss" || name == "product") return SphereMethod::product_gauss;
  throw ConfigError("unknown sphere rule method: " + name);
}

double sphere_area(std::size_t n) {
  const double h = 0.5 * static_cast<double>(n);
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

double ball_volume(std::size_t n) {
  const double h = 0.5 * static_cast<double>(n);
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

SphereRule::SphereRule(std::size_t ambient_dim, std::size_t sphere_dim, SphereMethod method, std::uint64_t seed,
                       std::vector<double> nodes, std::vector<double> weights)
    : dim_(ambient_dim),
      sphere_dim_(sphere_dim),
      method_(method),
      seed_(seed),
      nodes_(std::move(nodes)),
      weights_(std::move(weights)) {
  if (nodes_.size() != weights_.size() * dim_) throw ConfigError("sphere rule: node/weight size mismatch");
  const std::size_t count = weights_.size();
  block_.resize(nodes_.size());
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < dim_; ++j) block_[j * count + i] = nodes_[i * dim_ + j];
}

double SphereRule::total_weight() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

void SphereRule::set_coarse(SphereRule coarse) { coarse_ = std::make_shared<const SphereRule>(std::move(coarse)); }

namespace {

void normalize_weights(std::vector<double>& w, double area) {
  double s = 0.0;
  for (double x : w) s += x;
  for (double& x : w) x *= area / s;
}

struct RawRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

RawRule circle_rule(std::size_t count) {
  RawRule r;
  for (std::size_t k = 0; k < count; ++k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    r.nodes.push_back(std::cos(phi));
    r.nodes.push_back(std::sin(phi));
    r.weights.push_back(1.0);
  }
  return r;
}

// S^{d-1} as (t, sqrt(1 - t^2) phi), phi in S^{d-2}, with dtheta = (1 - t^2)^{(d-3)/2} dt dphi.
RawRule product_rule(std::size_t d, std::size_t level) {
  if (d == 2) return circle_rule(2 * level);
  const GaussRule g = gauss_gegenbauer(level, 0.5 * (static_cast<double>(d) - 3.0));
  const RawRule sub = product_rule(d - 1, level);
  RawRule r;
  const std::size_t sub_count = sub.weights.size();
  for (std::size_t a = 0; a < g.nodes.size(); ++a) {
    const double t = g.nodes[a];
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (std::size_t b = 0; b < sub_count; ++b) {
      r.nodes.push_back(t);
      for (std::size_t j = 0; j < d - 1; ++j) r.nodes.push_back(s * sub.nodes[b * (d - 1) + j]);
      r.weights.push_back(g.weights[a] * sub.weights[b]);
    }
  }
  return r;
}

std::size_t product_level(std::size_t d, std::size_t budget) {
  std::size_t m = 1;
  for (;;) {
    const std::size_t next = m + 1;
    double count = 2.0 * static_cast<double>(next);
    for (std::size_t i = 2; i < d; ++i) count *= static_cast<double>(next);
    if (count > static_cast<double>(budget)) break;
    m = next;
  }
  return m;
}

SphereRule make_rule(std::size_t n, SphereMethod method, std::uint64_t seed, RawRule raw) {
  normalize_weights(raw.weights, sphere_area(n));
  return SphereRule(n, n, method, seed, std::move(raw.nodes), std::move(raw.weights));
}

SphereRule product_gauss_level(std::size_t n, std::size_t level, std::uint64_t seed, int companions) {
  SphereRule rule = make_rule(n, SphereMethod::product_gauss, seed, product_rule(n, level));
  if (companions > 0 && level >= 2) rule.set_coarse(product_gauss_level(n, (level + 1) / 2, seed, companions - 1));
  return rule;
}

// Product rule plus two coarser companions (fine -> coarse -> coarser), used
// by integrate_nodes for the refinement-gap error estimate.
SphereRule product_gauss_rule(std::size_t n, std::size_t size, std::uint64_t seed, int companions = 2) {
  if (n == 2) {
    SphereRule rule = make_rule(n, SphereMethod::product_gauss, seed, circle_rule(size));
    if (companions > 0 && size >= 4) rule.set_coarse(product_gauss_rule(n, (size + 1) / 2, seed, companions - 1));
    return rule;
  }
  const std::size_t level = product_level(n, size);
  if (level < 2) throw ConfigError("product_gauss: node budget too small for dimension " + std::to_string(n));
  return product_gauss_level(n, level, seed, companions);
}

}  // namespace

SphereRule sphere_rule(std::size_t n, SphereMethod method, std::size_t size, std::uint64_t seed) {
  if (n == 1) {
    // S^0 = {+1, -1}; every method coincides.
    return SphereRule(1, 1, SphereMethod::product_gauss, seed, {1.0, -1.0}, {1.0, 1.0});
  }
  if (n < 2) throw ConfigError("sphere rule needs n >= 1");
  if (size < 2) throw ConfigError("sphere rule needs at least 2 nodes");
  switch (method) {
    case SphereMethod::monte_carlo: {
      Rng rng(seed);
      RawRule raw;
      for (std::size_t i = 0; i < size; ++i) {
        const Vec u = rng.unit_vector(n);
        raw.nodes.insert(raw.nodes.end(), u.begin(), u.end());
        raw.weights.push_back(1.0);
      }
      return make_rule(n, method, seed, std::move(raw));
    }
    case SphereMethod::antithetic_mc: {
      if (size % 2 != 0) throw ConfigError("antithetic rule needs an even size");
      Rng rng(seed);
      RawRule raw;
      for (std::size_t i = 0; i < size / 2; ++i) {
        const Vec u = rng.unit_vector(n);
        raw.nodes.insert(raw.nodes.end(), u.begin(), u.end());
        for (double x : u) raw.nodes.push_back(-x);
        raw.weights.push_back(1.0);
        raw.weights.push_back(1.0);
      }
      return make_rule(n, method, seed, std::move(raw));
    }
    case SphereMethod::product_gauss:
      if (n > 8) throw ConfigError("product_gauss supports n <= 8");
      return product_gauss_rule(n, size, seed);
  }
  throw ConfigError("unsupported sphere rule method");
}

SphereRule sphere_rule(std::size_t n, const SphereRuleSpec& spec) {
  return sphere_rule(n, spec.method, spec.size, spec.seed);
}

SphereRule embed_rule(const SphereRule& base, const std::vector<Vec>& basis) {
  if (basis.size() != base.dim()) throw ConfigError("embed_rule: basis size must match the rule dimension");
  const std::size_t d = basis.empty() ? 0 : basis.front().size();
  std::vector<double> nodes(base.size() * d, 0.0);
  for (std::size_t i = 0; i < base.size(); ++i) {
    const auto u = base.node(i);
    double* out = nodes.data() + i * d;
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t c = 0; c < d; ++c) out[c] += u[j] * basis[j][c];
  }
  std::vector<double> weights(base.weights().begin(), base.weights().end());
  SphereRule rule(d, base.sphere_dim(), base.method(), base.seed(), std::move(nodes), std::move(weights));
  if (const SphereRule* coarse = base.coarse()) rule.set_coarse(embed_rule(*coarse, basis));
  return rule;
}

SubsphereRule subsphere_rule(std::span<const double> xi, const SphereRule& base) {
  const std::size_t n = xi.size();
  if (n < 2) throw InputDomainError("subsphere needs n >= 2");
  if (std::abs(norm(xi) - 1.0) > 1e-10) throw InputDomainError("subsphere direction must be a unit vector");
  if (base.dim() != n - 1) throw ConfigError("subsphere base rule must live on S^{n-2}");
  Vec x(xi.begin(), xi.end());
  std::vector<Vec> basis = orthonormal_complement({x}, n);
  SphereRule rule = embed_rule(base, basis);
  return SubsphereRule{std::move(x), std::move(basis), std::move(rule)};
}

SubsphereRule subsphere_rule(std::span<const double> xi, const SphereRuleSpec& spec) {
  if (xi.size() < 2) throw InputDomainError("subsphere needs n >= 2");
  return subsphere_rule(xi, sphere_rule(xi.size() - 1, spec));
}

Estimate reduce_nodes(const SphereRule& rule, const NodeValues& nv) {
  const std::size_t count = rule.size();
  if (nv.values.size() != count) throw ConfigError("reduce_nodes: value count mismatch");
  Estimate e;
  e.n_evals = nv.n_evals;
  e.value = kernels::weighted_sum(rule.weights(), nv.values);
  const double area = rule.total_weight();
  if (rule.method() == SphereMethod::monte_carlo && count >= 2) {
    const double mean = e.value / area;
    const double var = kernels::sum_squared_deviation(nv.values, mean) / static_cast<double>(count - 1);
    e.err = area * std::sqrt(var / static_cast<double>(count));
  } else if (rule.method() == SphereMethod::antithetic_mc && count >= 4) {
    std::vector<double> pairs(count / 2);
    for (std::size_t j = 0; j < pairs.size(); ++j) pairs[j] = 0.5 * (nv.values[2 * j] + nv.values[2 * j + 1]);
    const double mean = e.value / area;
    const double var = kernels::sum_squared_deviation(pairs, mean) / static_cast<double>(pairs.size() - 1);
    e.err = area * std::sqrt(var / static_cast<double>(pairs.size()));
  }
  if (!nv.errs.empty()) e.err += kernels::weighted_sum(rule.weights(), nv.errs);
  return e;
}

Estimate integrate_sphere(const std::function<double(std::span<const double>)>& f, const SphereRule& rule) {
  return integrate_nodes(rule, [&](const SphereRule& r) {
    NodeValues nv;
    nv.values.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      try {
        nv.values[i] = f(r.node(i));
      } catch (const EvaluationError&) {
        throw;
      } catch (const std::exception& ex) {
        throw EvaluationError(i, ex.what());
      }
    }
    nv.n_evals = r.size();
    return nv;
  });
}

GaussRule gauss_gegenbauer(std::size_t m, double alpha) {
  if (m == 0) throw ConfigError("Gauss rule needs at least one node");
  if (!(alpha > -1.0)) throw ConfigError("Gegenbauer weight needs alpha > -1");
  // Jacobi matrix of the symmetric Jacobi weight (alpha = beta): zero diagonal,
  // b_k^2 = 4k (k + a)^2 (k + 2a) / ((2k + 2a)^2 (2k + 2a + 1) (2k + 2a - 1)).
  Eigen::MatrixXd jm = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t k = 1; k < m; ++k) {
    const double kk = static_cast<double>(k);
    const double ab = 2.0 * alpha;
    const double num = 4.0 * kk * (kk + alpha) * (kk + alpha) * (kk + ab);
    const double den = (2.0 * kk + ab) * (2.0 * kk + ab) * (2.0 * kk + ab + 1.0) * (2.0 * kk + ab - 1.0);
    const double b = std::sqrt(num / den);
    jm(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = b;
    jm(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jm);
  const double mu0 = std::sqrt(std::numbers::pi) * std::tgamma(alpha + 1.0) / std::tgamma(alpha + 1.5);
  GaussRule g;
  g.nodes.resize(m);
  g.weights.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    g.nodes[i] = es.eigenvalues()(idx);
    const double v0 = es.eigenvectors()(0, idx);
    g.weights[i] = mu0 * v0 * v0;
  }
  // Symmetrize exactly: nodes come in +- pairs.
  for (std::size_t i = 0; i < m / 2; ++i) {
    const std::size_t j = m - 1 - i;
    const double t = 0.5 * (g.nodes[j] - g.nodes[i]);
    const double w = 0.5 * (g.weights[i] + g.weights[j]);
    g.nodes[i] = -t;
    g.nodes[j] = t;
    g.weights[i] = w;
    g.weights[j] = w;
  }
  if (m % 2 == 1) g.nodes[m / 2] = 0.0;
  return g;
}

const GaussRule& gauss_legendre(std::size_t m) {
  static std::mutex mutex;
  static std::map<std::size_t, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, gauss_gegenbauer(m, 0.0)).first;
  return it->second;
}

[[noreturn]] void throw_radial_failure_domain(double r_max) {
  throw InputDomainError("radial integral needs a finite upper limit >= 0, got " + std::to_string(r_max));
}

namespace detail {

[[noreturn]] void throw_radial_failure(double lo, double hi, double diff, std::size_t evals) {
  throw QuadratureFailure("radial refinement did not converge on [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]: gap " + std::to_string(diff) + " after " +
                          std::to_string(evals) + " evaluations");
}

}  // namespace detail

Estimate radial_integral(const std::function<double(double)>& g, int k, double r_max, double tol) {
  if (!std::isfinite(r_max)) throw_radial_failure_domain(r_max);
  return radial_integral_t(g, k, r_max, tol);
}

Estimate radial_integral(const std::function<double(double)>& g, int k, const RadialTail& tail, double tol) {
  Estimate e = radial_integral(g, k, tail.cutoff, tol);
  e.value += tail.tail;
  return e;
}

}  // namespace bplab
