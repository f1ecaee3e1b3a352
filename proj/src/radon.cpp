#include "bplab/radon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "bplab/error.hpp"

namespace bplab {

using nlohmann::json;

SphereFunction sphere_function(std::function<double(std::span<const double>)> fn, bool even) {
  if (!fn) throw InputDomainError("sphere function needs an oracle");
  return SphereFunction{std::move(fn), even, std::nullopt};
}

SphereFunction zonal_function(Vec axis, std::function<double(double)> profile, bool even) {
  if (!profile) throw InputDomainError("zonal function needs a profile");
  axis = normalized(axis);
  SphereFunction f;
  f.fn = [axis, profile](std::span<const double> theta) {
    return profile(std::clamp(dot(theta, axis), -1.0, 1.0));
  };
  f.even = even;
  f.zonal = ZonalPart{std::move(axis), std::move(profile)};
  return f;
}

Estimate radon(const SphereFunction& f, const SubsphereRule& sub) { return integrate_sphere(f.fn, sub.rule); }

Estimate radon(const SphereFunction& f, std::span<const double> xi, const SphereRuleSpec& sub) {
  return radon(f, subsphere_rule(xi, sub));
}

Estimate selfduality_residual(const SphereFunction& f, const SphereFunction& g, const SphereRule& rule,
                              const SphereRuleSpec& sub) {
  const std::size_t n = rule.dim();
  if (n < 3) throw ConfigError("self-duality needs n >= 3");
  const SphereRule base = sphere_rule(n - 1, sub);
  Estimate out = integrate_nodes(rule, [&](const SphereRule& r) {
    NodeValues nv;
    nv.values.resize(r.size());
    nv.errs.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto xi = r.node(i);
      const SubsphereRule s = subsphere_rule(xi, base);
      const Estimate rf = radon(f, s);
      const Estimate rg = radon(g, s);
      const double fv = f(xi);
      const double gv = g(xi);
      nv.values[i] = rf.value * gv - fv * rg.value;
      nv.errs[i] = std::fabs(gv) * rf.err + std::fabs(fv) * rg.err;
      nv.n_evals += rf.n_evals + rg.n_evals + 2;
    }
    return nv;
  });
  out.value = std::fabs(out.value);
  return out;
}

namespace {

// Quantized, sign-canonical key: xi and -xi share an entry.
std::vector<long long> direction_key(std::span<const double> xi) {
  double sign = 1.0;
  for (double v : xi) {
    if (std::fabs(v) > 1e-13) {
      sign = v > 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  std::vector<long long> key;
  key.reserve(xi.size());
  for (double v : xi) key.push_back(std::llround(sign * v * 1e13));
  return key;
}

struct SectionCache {
  std::mutex mutex;
  std::map<std::vector<long long>, double> values;
};

}  // namespace

StarBody intersection_body_of(const StarBody& body, const RuleSet& rules) {
  const std::size_t n = body.dim();
  if (n < 2) throw InputDomainError("intersection body needs n >= 2");
  auto subs = std::make_shared<const SubsphereRules>(n, rules.subsphere);
  auto cache = std::make_shared<SectionCache>();
  auto radial_fn = [body, subs, cache](std::span<const double> xi) {
    const auto key = direction_key(xi);
    {
      std::lock_guard lock(cache->mutex);
      if (auto it = cache->values.find(key); it != cache->values.end()) return it->second;
    }
    const double v = section_volume(body, subs->at(xi)).value;
    std::lock_guard lock(cache->mutex);
    cache->values.emplace(key, v);
    return v;
  };
  json desc = {{"base", body.describe()}, {"rules", describe(rules)}};
  return radial_oracle_body(n, BodyFamily::intersection_body_of, std::move(radial_fn), std::move(desc),
                            BodyTraits{body.convex(), body.r_theta_invariant()});
}

double legendre(std::size_t k, double t) {
  if (k == 0) return 1.0;
  double p0 = 1.0;
  double p1 = t;
  for (std::size_t j = 1; j < k; ++j) {
    const double jj = static_cast<double>(j);
    const double p2 = ((2.0 * jj + 1.0) * t * p1 - jj * p0) / (jj + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double funk_hecke_multiplier(std::size_t k) { return 2.0 * std::numbers::pi * legendre(k, 0.0); }

std::string verdict_name(ZonalVerdict v) {
  switch (v) {
    case ZonalVerdict::certified_positive: return "certified_positive";
    case ZonalVerdict::certified_negative: return "certified_negative";
    case ZonalVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

double ZonalCertificate::g(double t) const {
  double s = 0.0;
  for (std::size_t i = 0; i < degrees.size(); ++i) s += coeffs[i] * legendre(degrees[i], t);
  return s;
}

json ZonalCertificate::to_json() const {
  return {{"degrees", degrees},     {"coeffs", coeffs},     {"multipliers", multipliers},
          {"min_g", min_g},         {"residual", residual}, {"verdict", verdict_name(verdict)}};
}

namespace {

constexpr std::size_t kGrid = 2001;

double grid_point(std::size_t i) { return -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(kGrid - 1); }

}  // namespace

ZonalCertificate zonal_radon_inverse(const SphereFunction& h, std::size_t degree_cut, double tol) {
  if (!h.zonal) throw InputDomainError("zonal inversion needs a zonal function");
  if (!h.even) throw InputDomainError("zonal inversion needs an even function");
  if (h.zonal->axis.size() != 3) throw ConfigError("zonal inversion is implemented for S^2 only");
  const auto& phi = h.zonal->profile;
  const GaussRule& gl = gauss_legendre(std::max<std::size_t>(4 * degree_cut, 8));

  ZonalCertificate cert;
  std::vector<double> h_coeffs;
  for (std::size_t k = 0; k <= degree_cut; k += 2) {
    double c = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) c += gl.weights[i] * phi(gl.nodes[i]) * legendre(k, gl.nodes[i]);
    c *= (2.0 * static_cast<double>(k) + 1.0) / 2.0;
    const double m = funk_hecke_multiplier(k);
    if (std::fabs(m) < 1e-12) throw ConditioningError("Funk-Hecke multiplier vanishes at degree " + std::to_string(k));
    cert.degrees.push_back(k);
    cert.multipliers.push_back(m);
    cert.coeffs.push_back(c / m);
    h_coeffs.push_back(c);
  }

  double residual = 0.0;
  double min_g = std::numeric_limits<double>::infinity();
  auto visit = [&](double t) {
    double ht = 0.0;
    for (std::size_t i = 0; i < cert.degrees.size(); ++i) ht += h_coeffs[i] * legendre(cert.degrees[i], t);
    residual = std::max(residual, std::fabs(phi(t) - ht));
    min_g = std::min(min_g, cert.g(t));
  };
  for (std::size_t i = 0; i < kGrid; ++i) visit(grid_point(i));
  for (double t : gl.nodes) visit(t);
  cert.residual = residual;
  cert.min_g = min_g;
  if (residual > tol)
    throw ResolutionError("zonal inversion: truncation residual " + std::to_string(residual) + " exceeds " +
                          std::to_string(tol) + " at degree " + std::to_string(degree_cut));
  if (min_g > 3.0 * residual) cert.verdict = ZonalVerdict::certified_positive;
  else if (min_g < -3.0 * residual) cert.verdict = ZonalVerdict::certified_negative;
  return cert;
}

std::function<double(double)> zonal_radon_forward(std::vector<double> coeffs_by_degree) {
  for (std::size_t k = 0; k < coeffs_by_degree.size(); ++k) coeffs_by_degree[k] *= funk_hecke_multiplier(k);
  return [c = std::move(coeffs_by_degree)](double t) {
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * legendre(k, t);
    return s;
  };
}

ZonalCertificate zonal_certificate(const StarBody& body, std::size_t degree_cut, double tol) {
  const auto* z = body.model_as<ZonalModel>();
  if (!z) throw InputDomainError("zonal certificate needs a zonal body");
  if (body.dim() != 3) throw ConfigError("zonal certificates are implemented for n = 3 only");
  return zonal_radon_inverse(zonal_function(z->axis(), z->profile().radius, true), degree_cut, tol);
}

}  // namespace bplab
