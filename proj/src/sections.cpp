#include "bplab/sections.hpp"

#include <algorithm>
#include <cmath>

#include "bplab/error.hpp"
#include "bplab/rng.hpp"

namespace bplab {

using nlohmann::json;

RuleSet default_rules(std::size_t n) {
  RuleSet r;
  r.sphere = {SphereMethod::antithetic_mc, 20000, 1};
  const std::size_t sub = n >= 1 ? n - 1 : 0;
  if (sub <= 8) {
    std::size_t budget = 2048;
    if (sub <= 2) budget = 128;
    else if (sub == 3) budget = 288;
    else if (sub == 4) budget = 1024;
    r.subsphere = {SphereMethod::product_gauss, budget, 1};
  } else {
    r.subsphere = {SphereMethod::antithetic_mc, 20000, 1};
  }
  return r;
}

RuleSet default_complex_rules(std::size_t n) {
  RuleSet r = default_rules(n);
  r.subsphere = default_rules(n - 1).subsphere;
  return r;
}

json describe(const RuleSet& rules) {
  auto spec = [](const SphereRuleSpec& s) {
    return json{{"method", method_name(s.method)}, {"sphere_nodes", s.size}, {"seed", s.seed}};
  };
  return {{"sphere", spec(rules.sphere)}, {"subsphere", spec(rules.subsphere)}, {"radial_tol", rules.radial_tol}};
}

Estimate polar_integral(const SphereRule& rule, const StarBody& body, const DensitySpec& f, int k, double tol) {
  if (rule.dim() != body.dim() || f.dim() != body.dim())
    throw ConfigError("polar integral: rule, body and density dimensions differ");
  const bool flat = f.family() == DensityFamily::lebesgue;
  return integrate_nodes(rule, [&](const SphereRule& r) {
    NodeValues nv;
    const std::size_t count = r.size();
    std::vector<double> rho(count);
    radial_batch(body, r.block(), count, rho);
    nv.values.resize(count);
    if (flat) {
      for (std::size_t i = 0; i < count; ++i) nv.values[i] = detail::ipow(rho[i], k + 1) / (k + 1);
      nv.n_evals = count;
      return nv;
    }
    nv.errs.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      const Estimate e = radial_moment(f, r.node(i), k, rho[i], tol);
      nv.values[i] = e.value;
      nv.errs[i] = e.err;
      nv.n_evals += e.n_evals;
    }
    return nv;
  });
}

Estimate measure_of_body(const StarBody& body, const DensitySpec& f, const SphereRule& rule, double tol) {
  return polar_integral(rule, body, f, static_cast<int>(body.dim()) - 1, tol);
}

Estimate measure_of_body(const StarBody& body, const DensitySpec& f, const RuleSet& rules) {
  return measure_of_body(body, f, sphere_rule(body.dim(), rules.sphere), rules.radial_tol);
}

Estimate measure_of_body(const SectionQuery& q) { return measure_of_body(q.body, q.density, q.rules); }

Estimate volume_of_body(const StarBody& body, const SphereRule& rule) {
  return polar_integral(rule, body, lebesgue(body.dim()), static_cast<int>(body.dim()) - 1, 1e-12);
}

Estimate volume_of_body(const StarBody& body, const SphereRuleSpec& spec) {
  return volume_of_body(body, sphere_rule(body.dim(), spec));
}

SubsphereRules::SubsphereRules(std::size_t n, const SphereRuleSpec& spec)
    : base_(n >= 2 ? sphere_rule(n - 1, spec) : throw InputDomainError("sections need n >= 2")) {}

Estimate section_measure(const StarBody& body, const DensitySpec& f, const SubsphereRule& sub, double tol) {
  if (sub.xi.size() != body.dim()) throw ConfigError("section: direction and body dimensions differ");
  return polar_integral(sub.rule, body, f, static_cast<int>(body.dim()) - 2, tol);
}

Estimate section_measure(const StarBody& body, const DensitySpec& f, std::span<const double> xi,
                         const RuleSet& rules) {
  return section_measure(body, f, subsphere_rule(xi, rules.subsphere), rules.radial_tol);
}

Estimate section_measure(const SectionQuery& q) { return section_measure(q.body, q.density, q.direction, q.rules); }

Estimate section_volume(const StarBody& body, const SubsphereRule& sub) {
  return section_measure(body, lebesgue(body.dim()), sub, 1e-12);
}

Estimate section_volume(const StarBody& body, std::span<const double> xi, const RuleSet& rules) {
  return section_volume(body, subsphere_rule(xi, rules.subsphere));
}

MaxSection max_section(const DensitySpec& f, const StarBody& body, const RuleSet& rules, std::size_t n_dirs,
                       std::uint64_t seed) {
  if (n_dirs == 0) throw InputDomainError("max_section needs at least one direction");
  const std::size_t n = body.dim();
  const SubsphereRules subs(n, rules.subsphere);
  auto value_at = [&](std::span<const double> xi) { return section_measure(body, f, subs.at(xi), rules.radial_tol); };

  Rng rng(seed);
  MaxSection best;
  for (std::size_t i = 0; i < n_dirs; ++i) {
    Vec xi = rng.unit_vector(n);
    const Estimate e = value_at(xi);
    best.candidates.push_back(e);
    if (i == 0 || e.value > best.value.value) {
      best.xi = std::move(xi);
      best.value = e;
    }
  }
  double step = 0.2;
  for (int round = 0; round < 3; ++round, step *= 0.5) {
    for (std::size_t j = 0; j < n; ++j) {
      for (double sign : {1.0, -1.0}) {
        Vec trial = best.xi;
        trial[j] += sign * step;
        trial = normalized(trial);
        const Estimate e = value_at(trial);
        if (e.value > best.value.value) {
          best.xi = std::move(trial);
          best.value = e;
        }
      }
    }
  }
  return best;
}

namespace {

void check_complex(const StarBody& body, const DensitySpec& f) {
  if (body.dim() % 2 != 0 || body.dim() < 4) throw ConfigError("complex sections need an even dimension >= 4");
  if (f.dim() != body.dim()) throw ConfigError("complex sections: body and density dimensions differ");
  if (!body.r_theta_invariant()) throw ConfigError("complex sections need an R_theta-invariant body");
}

}  // namespace

Estimate complex_measure_of_body(const StarBody& body, const DensitySpec& f, const RuleSet& rules) {
  check_complex(body, f);
  return measure_of_body(body, f, rules);
}

Estimate complex_section_measure(const StarBody& body, const DensitySpec& f, const ComplexDirection& cdir,
                                 const SphereRule& base, double tol) {
  check_complex(body, f);
  if (!f.flags().r_theta_invariant)
    throw ConfigError("complex sections need an R_theta-invariant density; apply symmetrize_complex first");
  if (cdir.xi.size() != body.dim() || cdir.basis.size() != base.dim())
    throw ConfigError("complex section: direction, basis and rule dimensions differ");
  const SphereRule rule = embed_rule(base, cdir.basis);
  return polar_integral(rule, body, f, static_cast<int>(body.dim()) - 3, tol);
}

Estimate complex_section_measure(const StarBody& body, const DensitySpec& f, const ComplexDirection& cdir,
                                 const RuleSet& rules) {
  check_complex(body, f);
  return complex_section_measure(body, f, cdir, sphere_rule(body.dim() - 2, rules.subsphere), rules.radial_tol);
}

}  // namespace bplab
