#include "bplab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "bplab/error.hpp"

namespace bplab {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_ = Clock::now();
};

double rel_err(const Estimate& e) { return e.value != 0.0 ? e.err / std::fabs(e.value) : kInf; }

}  // namespace

std::size_t default_direction_count(std::size_t n) { return n <= 4 ? 200 : 500; }

double match_scale(const StarBody& body, const DensitySpec& f, const SphereRule& rule, int k, double target,
                   double tol) {
  if (!(target > 0.0)) throw InputDomainError("match_scale needs a positive target");
  const std::size_t count = rule.size();
  std::vector<double> rho(count);
  radial_batch(body, rule.block(), count, rho);
  const auto w = rule.weights();

  auto value = [&](double s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) acc += w[i] * radial_moment(f, rule.node(i), k, s * rho[i], tol).value;
    return acc;
  };
  auto slope = [&](double s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double r = s * rho[i];
      acc += w[i] * rho[i] * detail::ipow(r, k) * f.along(rule.node(i), r);
    }
    return acc;
  };

  const double f1 = value(1.0);
  if (!(f1 > 0.0)) throw DegenerateBodyError("match_scale: zero section measure");
  double s = std::pow(target / f1, 1.0 / (k + 1));
  if (f.family() == DensityFamily::lebesgue) return s;

  double lo = 0.0;
  double hi = kInf;
  for (int iter = 0; iter < 200; ++iter) {
    const double fs = value(s);
    if (std::fabs(fs - target) <= 1e-12 * target) return s;
    if (fs < target) lo = s;
    else hi = s;
    if (std::isfinite(hi) && hi - lo <= 1e-14 * hi) return lo;
    const double d = slope(s);
    double next = (d > 0.0 && std::isfinite(d)) ? s - (fs - target) / d : kInf;
    if (!(next > lo && next < hi)) next = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * std::max(s, lo);
    if (next > 1e12) return kInf;
    s = next;
  }
  return std::isfinite(hi) ? lo : kInf;
}

std::optional<std::string> intersection_body_evidence(const StarBody& body) {
  if (const auto* lp = body.model_as<LpBallModel>()) {
    if (lp->p() >= 1.0 && lp->p() <= 2.0) return "lp ball with p in [1, 2] (subspace of L_q, q <= 2)";
    return std::nullopt;
  }
  if (body.model_as<EllipsoidModel>()) return "ellipsoid (linear image of the Euclidean ball)";
  if (const auto* li = body.model_as<LinearImageModel>()) {
    if (auto inner = intersection_body_evidence(li->base())) return "linear image of " + *inner;
  }
  return std::nullopt;
}

// ---- domination harness ---------------------------------------------------

namespace {

struct SectionSetup {
  std::vector<Vec> directions;
  std::vector<SphereRule> rules;  // integration rule for each direction's section
  int power = 0;
};

struct DominationOutcome {
  double scale = 1.0;
  StarBody body_k;
  std::vector<Estimate> sk;
  std::vector<Estimate> sm;
  DominationVerdict verdict = DominationVerdict::verified;
  double max_excess = -kInf;  // max over directions of (sK - sM) / e
};

// Section measure of sK over one direction's rule (fine level only), the
// quantity match_scale solves for.
class ScaledSection {
 public:
  ScaledSection(const StarBody& body, const DensitySpec& f, const SphereRule& rule, int k, double tol)
      : f_(f), rule_(rule), k_(k), tol_(tol), rho_(rule.size()) {
    radial_batch(body, rule.block(), rule.size(), rho_);
  }

  double value(double s) const {
    const auto w = rule_.weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < rho_.size(); ++i) acc += w[i] * radial_moment(f_, rule_.node(i), k_, s * rho_[i], tol_).value;
    return acc;
  }

  /// Scale at which the Lebesgue section would hit `target`; orders the directions.
  double lebesgue_guess(double target) const {
    const auto w = rule_.weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < rho_.size(); ++i) acc += w[i] * detail::ipow(rho_[i], k_ + 1);
    return std::pow(target * (k_ + 1) / acc, 1.0 / (k_ + 1));
  }

 private:
  const DensitySpec& f_;
  const SphereRule& rule_;
  int k_;
  double tol_;
  std::vector<double> rho_;
};

// min_i s_i where s_i solves section_i(s K) = target_i. Each section is
// increasing in s, so s <= s_i exactly when section_i(s K) <= target_i: solve
// the few directions with the smallest Lebesgue guesses, then sweep the rest
// at the candidate and solve only those that still exceed their target.
double dominating_scale(const DensitySpec& f, const StarBody& body_k, const SectionSetup& setup,
                        const std::vector<Estimate>& targets, double tol) {
  const std::size_t count = setup.rules.size();
  if (f.family() == DensityFamily::lebesgue) {
    double s = kInf;
    for (std::size_t i = 0; i < count; ++i)
      s = std::min(s, match_scale(body_k, f, setup.rules[i], setup.power, targets[i].value, tol));
    return s;
  }
  std::vector<ScaledSection> sections;
  std::vector<std::size_t> order(count);
  std::vector<double> guess(count);
  for (std::size_t i = 0; i < count; ++i) {
    sections.emplace_back(body_k, f, setup.rules[i], setup.power, tol);
    guess[i] = sections[i].lebesgue_guess(targets[i].value);
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return guess[a] < guess[b]; });
  std::vector<bool> solved(count, false);
  double s = kInf;
  auto solve = [&](std::size_t i) {
    solved[i] = true;
    s = std::min(s, match_scale(body_k, f, setup.rules[i], setup.power, targets[i].value, tol));
  };
  for (std::size_t j = 0; j < std::min<std::size_t>(count, 4); ++j) solve(order[j]);
  for (bool changed = true; changed && std::isfinite(s);) {
    changed = false;
    for (std::size_t i : order) {
      if (solved[i]) continue;
      if (sections[i].value(s) > targets[i].value) {
        solve(i);
        changed = true;
      }
    }
  }
  if (!std::isfinite(s))
    for (std::size_t i = 0; i < count; ++i)
      if (!solved[i]) solve(i);
  return s;
}

DominationOutcome run_domination(const DensitySpec& f, const StarBody& body_k, const StarBody& body_m,
                                 const SectionSetup& setup, double tol, bool construct) {
  DominationOutcome out{1.0, body_k, {}, {}, DominationVerdict::verified, -kInf};
  for (const auto& rule : setup.rules) out.sm.push_back(polar_integral(rule, body_m, f, setup.power, tol));
  if (construct) {
    const double s = dominating_scale(f, body_k, setup, out.sm, tol);
    if (std::isfinite(s)) {
      out.scale = s;
      out.body_k = scaled(body_k, s);
    }
  }
  bool inconclusive = false;
  for (std::size_t i = 0; i < setup.rules.size(); ++i) {
    out.sk.push_back(polar_integral(setup.rules[i], out.body_k, f, setup.power, tol));
    const double diff = out.sk[i].value - out.sm[i].value;
    const double e = std::max(std::hypot(out.sk[i].err, out.sm[i].err),
                              1e-12 * std::max(out.sk[i].value, out.sm[i].value));
    out.max_excess = std::max(out.max_excess, diff / e);
    if (diff > 6.0 * e) out.verdict = DominationVerdict::violated;
    else if (diff > 3.0 * e) inconclusive = true;
  }
  if (out.verdict != DominationVerdict::violated && inconclusive) out.verdict = DominationVerdict::inconclusive;
  return out;
}

void add_bound(ExperimentReport& rep, const std::string& name, double bound, bool asserted, double ratio,
               double rel) {
  BoundVerdict b{name, bound, asserted, ratio <= bound * (1.0 + 3.0 * rel)};
  if (asserted && !b.holds) rep.passed = false;
  rep.bounds.push_back(b);
}

void fill_direction_table(ExperimentReport& rep, const std::vector<Vec>& dirs, const DominationOutcome& dom) {
  const std::size_t n = dirs.empty() ? 0 : dirs.front().size();
  for (std::size_t j = 0; j < n; ++j) rep.table.columns.push_back("xi_" + std::to_string(j + 1));
  for (const char* c : {"mu_K_section", "err_K", "mu_M_section", "err_M", "n_evals"}) rep.table.columns.push_back(c);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    std::vector<double> row(dirs[i].begin(), dirs[i].end());
    row.push_back(dom.sk[i].value);
    row.push_back(dom.sk[i].err);
    row.push_back(dom.sm[i].value);
    row.push_back(dom.sm[i].err);
    row.push_back(static_cast<double>(dom.sk[i].n_evals + dom.sm[i].n_evals));
    rep.table.rows.push_back(std::move(row));
  }
}

std::vector<Vec> seeded_directions(std::size_t n, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec> dirs;
  for (std::size_t i = 0; i < count; ++i) dirs.push_back(rng.unit_vector(n));
  return dirs;
}

}  // namespace

ExperimentReport bp_check(const DensitySpec& f, const StarBody& body_k, const StarBody& body_m, std::size_t n_dirs,
                          const RuleSet& rules, std::uint64_t seed, const BpOptions& opts) {
  const Stopwatch clock;
  const std::size_t n = body_k.dim();
  if (body_m.dim() != n || f.dim() != n) throw ConfigError("bp_check: body and density dimensions differ");
  if (n < 2) throw InputDomainError("bp_check needs n >= 2");
  if (!body_k.convex()) throw InputDomainError("bp_check needs a convex K");
  if (n_dirs == 0) n_dirs = default_direction_count(n);

  SectionSetup setup;
  setup.power = static_cast<int>(n) - 2;
  setup.directions = seeded_directions(n, n_dirs, seed);
  const SubsphereRules subs(n, rules.subsphere);
  for (const auto& xi : setup.directions) setup.rules.push_back(subs.at(xi).rule);

  const DominationOutcome dom = run_domination(f, body_k, body_m, setup, rules.radial_tol, opts.construct_domination);

  ExperimentReport rep;
  rep.experiment = "bp_check";
  rep.seed = seed;
  rep.config = {{"density", f.describe()},
                {"K", body_k.describe()},
                {"M", body_m.describe()},
                {"rules", describe(rules)},
                {"directions", n_dirs},
                {"construct_domination", opts.construct_domination}};
  fill_direction_table(rep, setup.directions, dom);
  rep.domination = dom.verdict;

  const SphereRule rule = sphere_rule(n, rules.sphere);
  const Estimate mk = measure_of_body(dom.body_k, f, rule, rules.radial_tol);
  const Estimate mm = measure_of_body(body_m, f, rule, rules.radial_tol);
  const double ratio = mk.value / mm.value;
  const double rel = rel_err(mk) + rel_err(mm);

  json cert = nullptr;
  std::optional<std::string> evidence = intersection_body_evidence(dom.body_k);
  if (n == 3 && dom.body_k.model_as<ZonalModel>()) {
    try {
      const ZonalCertificate c = zonal_certificate(dom.body_k, opts.zonal_degree_cut, opts.zonal_tol);
      cert = c.to_json();
      if (c.verdict == ZonalVerdict::certified_positive) evidence = "zonal certificate (min g > 3 residual)";
    } catch (const ResolutionError& e) {
      cert = {{"error", e.what()}};
    }
  }
  const DistanceBound db = ball_distance_bound(dom.body_k, seed);

  rep.results = {{"scale", dom.scale},
                 {"mu_K", to_json(mk)},
                 {"mu_M", to_json(mm)},
                 {"ratio", ratio},
                 {"ratio_rel_err", rel},
                 {"max_excess_sigma", dom.max_excess},
                 {"intersection_body_evidence", evidence ? json(*evidence) : json(nullptr)},
                 {"zonal_certificate", cert},
                 {"distance_bound", {{"d", db.d}, {"analytic", db.analytic}}}};

  if (dom.verdict == DominationVerdict::verified) {
    const double dn = static_cast<double>(n);
    add_bound(rep, "sqrt_n", std::sqrt(dn), true, ratio, rel);
    add_bound(rep, "distance", db.d, db.analytic, ratio, rel);
    if (evidence) add_bound(rep, "one", 1.0, true, ratio, rel);
    if (const auto* lp = dom.body_k.model_as<LpBallModel>(); lp && lp->p() > 2.0) {
      const double e = std::isinf(lp->p()) ? 0.5 : 0.5 - 1.0 / lp->p();
      add_bound(rep, "lp_lewis", std::pow(dn, e), true, ratio, rel);
    }
  }
  rep.wall_seconds = clock.seconds();
  return rep;
}

ExperimentReport complex_bp_check(const DensitySpec& f, const StarBody& body_k, const StarBody& body_m,
                                  std::size_t n_dirs, const RuleSet& rules, std::uint64_t seed,
                                  const BpOptions& opts) {
  const Stopwatch clock;
  const std::size_t n = body_k.dim();
  if (body_m.dim() != n || f.dim() != n) throw ConfigError("complex_bp_check: body and density dimensions differ");
  if (n % 2 != 0 || n < 4) throw InputDomainError("complex_bp_check needs R^{2m} with m >= 2");
  if (!body_k.r_theta_invariant() || !body_m.r_theta_invariant())
    throw ConfigError("complex_bp_check needs R_theta-invariant bodies");
  if (!body_k.convex()) throw InputDomainError("complex_bp_check needs a convex K");
  if (n_dirs == 0) n_dirs = default_direction_count(n);

  const bool symmetrize = !f.flags().r_theta_invariant;
  const DensitySpec fc = symmetrize ? symmetrize_complex(f) : f;

  SectionSetup setup;
  setup.power = static_cast<int>(n) - 3;
  setup.directions = seeded_directions(n, n_dirs, seed);
  const SphereRule base = sphere_rule(n - 2, rules.subsphere);
  for (const auto& xi : setup.directions) setup.rules.push_back(embed_rule(base, complex_direction(xi).basis));

  const DominationOutcome dom = run_domination(fc, body_k, body_m, setup, rules.radial_tol, opts.construct_domination);

  ExperimentReport rep;
  rep.experiment = "complex_bp_check";
  rep.seed = seed;
  rep.config = {{"density", f.describe()},
                {"K", body_k.describe()},
                {"M", body_m.describe()},
                {"rules", describe(rules)},
                {"directions", n_dirs},
                {"construct_domination", opts.construct_domination},
                {"symmetrized_density", symmetrize}};
  fill_direction_table(rep, setup.directions, dom);
  rep.domination = dom.verdict;

  const SphereRule rule = sphere_rule(n, rules.sphere);
  const Estimate mk = measure_of_body(dom.body_k, fc, rule, rules.radial_tol);
  const Estimate mm = measure_of_body(body_m, fc, rule, rules.radial_tol);
  const double ratio = mk.value / mm.value;
  const double rel = rel_err(mk) + rel_err(mm);
  rep.results = {{"scale", dom.scale},
                 {"mu_K", to_json(mk)},
                 {"mu_M", to_json(mm)},
                 {"ratio", ratio},
                 {"ratio_rel_err", rel},
                 {"max_excess_sigma", dom.max_excess},
                 {"density_used", symmetrize ? "f_c (R_theta symmetrization)" : "f (already R_theta-invariant)"}};
  if (dom.verdict == DominationVerdict::verified) add_bound(rep, "two_n", static_cast<double>(n), true, ratio, rel);
  rep.wall_seconds = clock.seconds();
  return rep;
}

// ---- random instances -----------------------------------------------------

StarBody random_convex_body(std::size_t n, Rng& rng) {
  static const double kExponents[] = {1.0, 1.5, 2.0, 3.0, 4.0, 8.0, kInf};
  auto axes = [&] {
    std::vector<double> a(n);
    for (double& v : a) v = std::exp(rng.uniform(-0.5, 0.5));
    return a;
  };
  switch (rng.index(4)) {
    case 0: return lp_ball(n, kExponents[rng.index(7)], axes());
    case 1: {
      Eigen::MatrixXd g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (Eigen::Index r = 0; r < g.rows(); ++r)
        for (Eigen::Index c = 0; c < g.cols(); ++c) g(r, c) = rng.normal();
      const Eigen::MatrixXd a =
          g * g.transpose() / static_cast<double>(n) + 0.5 * Eigen::MatrixXd::Identity(g.rows(), g.cols());
      return ellipsoid(a);
    }
    case 2: return cube(n, std::exp(rng.uniform(-0.3, 0.3)));
    default: {
      const double p = kExponents[rng.index(7)];
      const std::vector<double> a = axes();
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic> q =
          Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      // Random rotation from the QR factor of a Gaussian matrix.
      Eigen::MatrixXd g(q.rows(), q.cols());
      for (Eigen::Index r = 0; r < g.rows(); ++r)
        for (Eigen::Index c = 0; c < g.cols(); ++c) g(r, c) = rng.normal();
      q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
      return linear_image(lp_ball(n, p, a), q);
    }
  }
}

StarBody random_complex_body(std::size_t complex_dim, Rng& rng) {
  static const double kExponents[] = {1.0, 1.5, 2.0, 3.0, 4.0, kInf};
  std::vector<double> scales(complex_dim);
  for (double& s : scales) s = std::exp(rng.uniform(-0.4, 0.4));
  return complex_lp_ball(complex_dim, kExponents[rng.index(6)], std::move(scales));
}

namespace {

StarBody random_zonal_body(Rng& rng) {
  static const double kExponents[] = {2.0, 4.0};
  const double p = kExponents[rng.index(2)];
  const double a = std::exp(rng.uniform(-0.3, 0.3));
  const double c = std::exp(rng.uniform(-0.3, 0.3));
  return zonal_body(rng.unit_vector(3), lp_revolution_profile(p, a, c), true);
}

DensitySpec suite_density(std::size_t n, std::size_t index) {
  return index % 2 == 0 ? gaussian(n) : cauchy(n, static_cast<double>(n) + 1.0);
}

double bound_value(const ExperimentReport& r, const std::string& name) {
  for (const auto& b : r.bounds)
    if (b.name == name) return b.bound;
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

ExperimentReport bp_suite(const SuiteOptions& opts) {
  const Stopwatch clock;
  ExperimentReport rep;
  rep.experiment = "bp_suite";
  rep.seed = opts.seed;
  rep.config = {{"pairs", opts.pairs}, {"dims", opts.dims}, {"directions", opts.n_dirs}};
  rep.table.columns = {"pair", "n", "density", "scale", "ratio", "ratio_rel_err", "bound_sqrt_n", "bound_one",
                       "domination", "passed"};
  Rng rng(opts.seed);
  double worst = 0.0;
  double worst_certified = 0.0;
  std::size_t certified = 0;
  std::size_t unverified = 0;
  for (std::size_t i = 0; i < opts.pairs; ++i) {
    const std::size_t n = opts.dims[i % opts.dims.size()];
    const bool zonal = opts.include_zonal && n == 3 && (i / opts.dims.size()) % 3 == 0;
    const StarBody k = zonal ? random_zonal_body(rng) : random_convex_body(n, rng);
    const StarBody m = random_convex_body(n, rng);
    const DensitySpec f = suite_density(n, i);
    RuleSet rules = default_rules(n);
    const std::uint64_t pair_seed = opts.seed * 1000003ULL + i;
    rules.sphere.seed = pair_seed;
    const ExperimentReport r = bp_check(f, k, m, opts.n_dirs, rules, pair_seed);
    const double one = bound_value(r, "one");
    const bool verified = r.domination == DominationVerdict::verified;
    if (!verified) ++unverified;
    if (!std::isnan(one)) {
      ++certified;
      worst_certified = std::max(worst_certified, r.results["ratio"].get<double>());
    }
    worst = std::max(worst, r.results["ratio"].get<double>() / std::sqrt(static_cast<double>(n)));
    if (!r.passed) rep.passed = false;
    rep.table.rows.push_back({static_cast<double>(i), static_cast<double>(n), static_cast<double>(i % 2),
                              r.results["scale"].get<double>(), r.results["ratio"].get<double>(),
                              r.results["ratio_rel_err"].get<double>(), bound_value(r, "sqrt_n"), one,
                              static_cast<double>(static_cast<int>(*r.domination)), r.passed ? 1.0 : 0.0});
  }
  rep.results = {{"pairs", opts.pairs},
                 {"unverified_domination", unverified},
                 {"certified_pairs", certified},
                 {"max_ratio_over_sqrt_n", worst},
                 {"max_certified_ratio", worst_certified},
                 {"density_codes", {{"0", "gaussian"}, {"1", "cauchy p = n + 1"}}},
                 {"domination_codes", {{"0", "verified"}, {"1", "violated"}, {"2", "inconclusive"}}}};
  rep.wall_seconds = clock.seconds();
  return rep;
}

ExperimentReport complex_bp_suite(const ComplexSuiteOptions& opts) {
  const Stopwatch clock;
  ExperimentReport rep;
  rep.experiment = "complex_bp_suite";
  rep.seed = opts.seed;
  rep.config = {{"pairs", opts.pairs}, {"complex_dims", opts.complex_dims}, {"directions", opts.n_dirs}};
  rep.table.columns = {"pair", "real_dim", "density", "scale", "ratio", "ratio_rel_err", "bound_two_n",
                       "domination", "passed"};
  Rng rng(opts.seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < opts.pairs; ++i) {
    const std::size_t m = opts.complex_dims[i % opts.complex_dims.size()];
    const std::size_t n = 2 * m;
    const StarBody k = random_complex_body(m, rng);
    const StarBody mb = random_complex_body(m, rng);
    const DensitySpec f = suite_density(n, i);
    RuleSet rules = default_complex_rules(n);
    const std::uint64_t pair_seed = opts.seed * 1000003ULL + i;
    rules.sphere.seed = pair_seed;
    const ExperimentReport r = complex_bp_check(f, k, mb, opts.n_dirs, rules, pair_seed);
    worst = std::max(worst, r.results["ratio"].get<double>() / static_cast<double>(n));
    if (!r.passed) rep.passed = false;
    rep.table.rows.push_back({static_cast<double>(i), static_cast<double>(n), static_cast<double>(i % 2),
                              r.results["scale"].get<double>(), r.results["ratio"].get<double>(),
                              r.results["ratio_rel_err"].get<double>(), bound_value(r, "two_n"),
                              static_cast<double>(static_cast<int>(*r.domination)), r.passed ? 1.0 : 0.0});
  }
  rep.results = {{"pairs", opts.pairs}, {"max_ratio_over_two_n", worst}};
  rep.wall_seconds = clock.seconds();
  return rep;
}

// ---- elementary lemmas ----------------------------------------------------

double PiecewiseConstant::moment(int k, double c) const {
  double s = 0.0;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double lo = breaks[j];
    if (lo >= c) break;
    const double hi = std::min(breaks[j + 1], c);
    s += values[j] * (detail::ipow(hi, k + 1) - detail::ipow(lo, k + 1)) / (k + 1);
  }
  return s;
}

std::pair<double, double> lemma_sides(double omega, double a, double b, const PiecewiseConstant& alpha, int e,
                                      int p, int q) {
  const double w = std::pow(omega, e);
  const double wa = std::pow(omega / a, e);
  const double lhs = wa * alpha.moment(p, a) - w * alpha.moment(q, a);
  const double rhs = wa * alpha.moment(p, b) - w * alpha.moment(q, b);
  return {lhs, rhs};
}

namespace {

LemmaCheck run_lemma(std::size_t trials, std::uint64_t seed, int e, int p, int q) {
  Rng rng(seed);
  LemmaCheck out;
  out.trials = trials;
  out.worst_gap = -kInf;
  for (std::size_t t = 0; t < trials; ++t) {
    const double omega = std::exp(rng.uniform(-2.0, 2.0));
    const double a = rng.uniform(0.05, 3.0);
    const double b = rng.uniform(0.05, 3.0);
    PiecewiseConstant alpha;
    const std::size_t pieces = 1 + rng.index(8);
    alpha.breaks.push_back(0.0);
    std::vector<double> cuts;
    for (std::size_t j = 0; j < pieces; ++j) cuts.push_back(rng.uniform(0.0, 4.0));
    std::sort(cuts.begin(), cuts.end());
    for (double c : cuts)
      if (c > alpha.breaks.back()) alpha.breaks.push_back(c);
    for (std::size_t j = 0; j + 1 < alpha.breaks.size(); ++j)
      alpha.values.push_back(rng.uniform() < 0.2 ? 0.0 : rng.uniform(0.0, 2.0));
    const auto [lhs, rhs] = lemma_sides(omega, a, b, alpha, e, p, q);
    const double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1e-300});
    const double gap = (lhs - rhs) / scale;
    out.worst_gap = std::max(out.worst_gap, gap);
    if (gap > 1e-12) ++out.violations;
  }
  return out;
}

}  // namespace

LemmaCheck lemma_elementary_property(std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (n < 2) throw InputDomainError("lemma check needs n >= 2");
  const int ni = static_cast<int>(n);
  return run_lemma(trials, seed, 1, ni - 1, ni - 2);
}

LemmaCheck lemma_elemcomp_property(std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (n < 2) throw InputDomainError("lemma check needs n >= 2");
  const int ni = static_cast<int>(n);
  return run_lemma(trials, seed, 2, 2 * ni - 1, 2 * ni - 3);
}

// ---- hyperplane inequalities ----------------------------------------------

double cn_constant(std::size_t n) {
  if (n < 2) throw InputDomainError("c_n needs n >= 2");
  const double dn = static_cast<double>(n);
  // log vol_k(B) = (k/2) log pi - lgamma(k/2 + 1)
  auto log_vol = [](double k) { return 0.5 * k * std::log(std::numbers::pi) - std::lgamma(0.5 * k + 1.0); };
  return std::exp((dn - 1.0) / dn * log_vol(dn) - log_vol(dn - 1.0));
}

HyperplaneStudy hyperplane_study(const DensitySpec& f, const StarBody& body, const RuleSet& rules, std::size_t n_dirs,
                                 std::uint64_t seed) {
  const std::size_t n = body.dim();
  if (f.dim() != n) throw ConfigError("hyperplane study: body and density dimensions differ");
  if (n < 2) throw InputDomainError("hyperplane study needs n >= 2");
  if (!body.convex()) throw InputDomainError("hyperplane study needs a convex body");
  if (n_dirs == 0) n_dirs = default_direction_count(n);
  const double dn = static_cast<double>(n);
  const SphereRule rule = sphere_rule(n, rules.sphere);
  HyperplaneStudy h;
  h.mu = measure_of_body(body, f, rule, rules.radial_tol);
  h.max_sec = max_section(f, body, rules, n_dirs, seed);
  h.vol = volume_of_body(body, rule);
  const double vn = std::pow(h.vol.value, 1.0 / dn);
  h.ratio_sqrtn = h.mu.value / (h.max_sec.value.value * vn);
  h.ratio_sqrtn_rel_err = rel_err(h.mu) + rel_err(h.max_sec.value) + rel_err(h.vol) / dn;
  h.bound = std::sqrt(dn) * dn / (dn - 1.0) * cn_constant(n);
  h.holds = h.ratio_sqrtn <= h.bound * (1.0 + 3.0 * h.ratio_sqrtn_rel_err);
  h.ratio_bob = h.max_sec.value.value / (std::pow(h.mu.value, (dn - 1.0) / dn) * std::pow(f.f0(), 1.0 / dn));
  h.bob_assertable = is_convex_measure(f.flags(), n);
  return h;
}

ExperimentReport hyperplane_report(const DensitySpec& f, const StarBody& body, const RuleSet& rules,
                                   std::size_t n_dirs, std::uint64_t seed) {
  const Stopwatch clock;
  const HyperplaneStudy h = hyperplane_study(f, body, rules, n_dirs, seed);
  ExperimentReport rep;
  rep.experiment = "hyperplane";
  rep.seed = seed;
  rep.config = {{"density", f.describe()}, {"K", body.describe()}, {"rules", describe(rules)}, {"directions", n_dirs}};
  rep.results = {{"mu_K", to_json(h.mu)},
                 {"max_section", to_json(h.max_sec.value)},
                 {"max_section_xi", h.max_sec.xi},
                 {"vol", to_json(h.vol)},
                 {"ratio_sqrtn", h.ratio_sqrtn},
                 {"ratio_sqrtn_rel_err", h.ratio_sqrtn_rel_err},
                 {"ratio_bob", h.ratio_bob},
                 {"ratio_bob_note", h.bob_assertable ? "convex measure: assertable with an unknown constant"
                                                     : "not a convex measure: recorded only"}};
  rep.bounds.push_back({"sqrt_n_cn", h.bound, true, h.holds});
  rep.passed = h.holds;
  rep.table.columns = {"candidate", "section", "err", "n_evals"};
  for (std::size_t i = 0; i < h.max_sec.candidates.size(); ++i) {
    const Estimate& e = h.max_sec.candidates[i];
    rep.table.rows.push_back({static_cast<double>(i), e.value, e.err, static_cast<double>(e.n_evals)});
  }
  rep.wall_seconds = clock.seconds();
  return rep;
}

CounterexampleScan counterexample_scan(std::size_t n, double p, const std::vector<double>& t_grid,
                                       const RuleSet& rules) {
  if (n < 2) throw InputDomainError("counterexample scan needs n >= 2");
  if (!(p > 0.0) || !(p < static_cast<double>(n))) throw InputDomainError("counterexample scan needs 0 < p < n");
  if (t_grid.empty()) throw InputDomainError("counterexample scan needs a t grid");
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    if (!(t_grid[i] > 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1])))
      throw InputDomainError("t grid must be positive and increasing");
  const DensitySpec f = cauchy(n, p);
  const double dn = static_cast<double>(n);
  const SphereRule rule = sphere_rule(n, rules.sphere);
  const Vec xi = unit_vector(n, n - 1);
  const SubsphereRule sub = subsphere_rule(xi, rules.subsphere);
  CounterexampleScan scan;
  scan.expected_slope = -p / dn;
  for (double t : t_grid) {
    const StarBody ball = euclidean_ball(n, t);
    CounterexampleRow row;
    row.t = t;
    row.section = section_measure(ball, f, sub, rules.radial_tol);
    row.mu = measure_of_body(ball, f, rule, rules.radial_tol);
    row.ratio_bob = row.section.value / std::pow(row.mu.value, (dn - 1.0) / dn);
    if (!scan.rows.empty() && !(row.ratio_bob < scan.rows.back().ratio_bob)) scan.strictly_decreasing = false;
    scan.rows.push_back(row);
  }
  if (scan.rows.size() >= 2) {
    const auto& a = scan.rows[scan.rows.size() - 2];
    const auto& b = scan.rows.back();
    scan.tail_slope = std::log(b.ratio_bob / a.ratio_bob) / std::log(b.t / a.t);
  }
  return scan;
}

ExperimentReport counterexample_report(std::size_t n, double p, const std::vector<double>& t_grid,
                                       const RuleSet& rules) {
  const Stopwatch clock;
  const CounterexampleScan scan = counterexample_scan(n, p, t_grid, rules);
  ExperimentReport rep;
  rep.experiment = "counterexample";
  rep.seed = rules.sphere.seed;
  rep.config = {{"n", n}, {"p", p}, {"t_grid", t_grid}, {"rules", describe(rules)}};
  rep.table.columns = {"t", "section", "section_err", "mu", "mu_err", "ratio_bob"};
  for (const auto& r : scan.rows)
    rep.table.rows.push_back({r.t, r.section.value, r.section.err, r.mu.value, r.mu.err, r.ratio_bob});
  rep.results = {{"strictly_decreasing", scan.strictly_decreasing},
                 {"tail_slope", scan.tail_slope},
                 {"expected_slope", scan.expected_slope}};
  rep.passed = scan.strictly_decreasing || scan.rows.size() < 2;
  rep.wall_seconds = clock.seconds();
  return rep;
}

ConstantSection constant_section_body(const DensitySpec& f, double lambda, const RuleSet& rules) {
  const std::size_t n = f.dim();
  if (n < 2) throw InputDomainError("constant-section body needs n >= 2");
  if (!f.flags().rotation_invariant)
    throw InputDomainError("constant-section body needs a rotation-invariant density");
  if (!(lambda > 0.0)) throw InputDomainError("constant-section body needs Lambda > 0");
  const double dn = static_cast<double>(n);
  const int k = static_cast<int>(n) - 2;
  const double s_sub = sphere_area(n - 1);
  const double s_full = sphere_area(n);
  const Vec e1 = unit_vector(n, 0);
  const double tol = std::min(rules.radial_tol, 1e-13);

  ConstantSection out;
  out.constant = std::pow(s_full, (dn - 1.0) / dn) * std::pow(dn, 1.0 / dn) / s_sub;
  out.capacity = f.family() == DensityFamily::lebesgue ? kInf : s_sub * radial_moment_inf(f, e1, k, tol).value;
  out.admissible = lambda < out.capacity;
  if (!out.admissible) return out;

  const double target = lambda / s_sub;
  auto value = [&](double t) { return radial_moment(f, e1, k, t, tol).value; };
  double lo = 0.0;
  double hi = 1.0;
  while (value(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw QuadratureFailure("constant-section body: radius bracket diverged");
  }
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (value(mid) < target) lo = mid;
    else hi = mid;
  }
  out.t = 0.5 * (lo + hi);
  const StarBody ball = euclidean_ball(n, out.t);
  const SphereRule rule = sphere_rule(n, rules.sphere);
  out.mu = measure_of_body(ball, f, rule, rules.radial_tol);
  out.vol = volume_of_body(ball, rule);
  out.rhs = out.constant * lambda * std::pow(out.vol.value, 1.0 / dn);
  out.holds = out.mu.value <= out.rhs * (1.0 + 3.0 * (rel_err(out.mu) + rel_err(out.vol) / dn));
  return out;
}

ExperimentReport const_section_report(const DensitySpec& f, double lambda, const RuleSet& rules) {
  const Stopwatch clock;
  const ConstantSection c = constant_section_body(f, lambda, rules);
  ExperimentReport rep;
  rep.experiment = "const_section";
  rep.seed = rules.sphere.seed;
  rep.config = {{"density", f.describe()}, {"lambda", lambda}, {"rules", describe(rules)}};
  rep.results = {{"admissible", c.admissible},
                 {"capacity", std::isinf(c.capacity) ? json("inf") : json(c.capacity)},
                 {"constant", c.constant}};
  rep.table.columns = {"lambda", "capacity", "admissible", "t", "mu", "mu_err", "vol", "rhs"};
  if (c.admissible) {
    rep.results["t"] = c.t;
    rep.results["mu_K"] = to_json(c.mu);
    rep.results["vol"] = to_json(c.vol);
    rep.results["rhs"] = c.rhs;
    rep.bounds.push_back({"hyperplane_constant", c.constant, true, c.holds});
    rep.passed = c.holds;
  }
  rep.table.rows.push_back({lambda, c.capacity, c.admissible ? 1.0 : 0.0, c.t, c.mu.value, c.mu.err, c.vol.value,
                            c.rhs});
  rep.wall_seconds = clock.seconds();
  return rep;
}

// ---- property suite -------------------------------------------------------

ExperimentReport property_suite(const PropertySuiteOptions& opts) {
  const Stopwatch clock;
  ExperimentReport rep;
  rep.experiment = "property_suite";
  rep.seed = opts.seed;
  rep.config = {{"trials", opts.trials},
                {"lemmas", opts.lemmas},
                {"selfduality", opts.selfduality},
                {"ball_body", opts.ball_body}};
  rep.table.columns = {"property", "n", "trials", "violations", "worst", "passed"};
  json names = json::array();
  auto add = [&](const std::string& name, std::size_t n, std::size_t trials, std::size_t violations, double worst,
                 bool ok) {
    rep.table.rows.push_back({static_cast<double>(names.size()), static_cast<double>(n),
                              static_cast<double>(trials), static_cast<double>(violations), worst, ok ? 1.0 : 0.0});
    names.push_back(name);
    if (!ok) rep.passed = false;
  };

  if (opts.lemmas) {
    for (std::size_t n = 2; n <= 6; ++n) {
      const LemmaCheck a = lemma_elementary_property(n, opts.trials, opts.seed + n);
      add("lemma_elementary", n, a.trials, a.violations, a.worst_gap, a.violations == 0);
      const LemmaCheck b = lemma_elemcomp_property(n, opts.trials, opts.seed + 100 + n);
      add("lemma_elemcomp", n, b.trials, b.violations, b.worst_gap, b.violations == 0);
    }
  }
  if (opts.selfduality) {
    const SphereRule rule = sphere_rule(3, SphereMethod::antithetic_mc, 20000, opts.seed);
    const SphereRuleSpec sub{SphereMethod::product_gauss, 128, 1};
    const StarBody c = cube(3);
    const SphereFunction f = sphere_function([](std::span<const double> t) { return t[0] * t[0]; }, true);
    const SphereFunction g = sphere_function([](std::span<const double> t) { return t[2] * t[2]; }, true);
    const SphereFunction h = sphere_function([&](std::span<const double> t) { return radial(c, t) * radial(c, t); }, true);
    for (const auto& [a, b] : {std::pair{f, g}, std::pair{h, g}}) {
      const Estimate r = selfduality_residual(a, b, rule, sub);
      add("radon_selfduality", 3, rule.size(), r.value <= 3.0 * r.err ? 0 : 1, r.value / std::max(r.err, 1e-300),
          r.value <= 3.0 * r.err);
    }
  }
  if (opts.ball_body) {
    Rng rng(opts.seed);
    for (std::size_t n = 3; n <= 4; ++n) {
      const StarBody kf = ball_body(cube(n), lebesgue(n));
      double worst = 0.0;
      for (int i = 0; i < 1000; ++i) {
        const Vec u = rng.unit_vector(n);
        worst = std::max(worst, std::fabs(radial(kf, u) / radial(cube(n), u) - 1.0));
      }
      add("ballbody_lebesgue_identity", n, 1000, worst <= 1e-8 ? 0 : 1, worst, worst <= 1e-8);
      const StarBody kg = ball_body(cube(n), gaussian(n));
      const NormAxiomCheck na = verify_norm_axioms(kg, std::min<std::size_t>(opts.trials, 2000), opts.seed + n);
      add("ballbody_triangle", n, std::min<std::size_t>(opts.trials, 2000), na.triangle_violations, na.worst_gap,
          na.triangle_violations == 0 && na.homogeneity_violations == 0);
      const RuleSet rules = default_rules(n);
      const SectionIdentity si = section_identity_residual(cube(n), gaussian(n), rng.unit_vector(n), rules);
      add("ballbody_section_identity", n, 1, si.residual.value <= 3.0 * si.residual.err ? 0 : 1,
          si.residual.value / std::max(si.residual.err, 1e-300), si.residual.value <= 3.0 * si.residual.err);
    }
  }
  rep.results = {{"properties", names}};
  rep.wall_seconds = clock.seconds();
  return rep;
}

ExperimentReport radon_report(const StarBody& body, std::size_t degree_cut, double tol) {
  const Stopwatch clock;
  ExperimentReport rep;
  rep.experiment = "radon";
  rep.config = {{"K", body.describe()}, {"degree_cut", degree_cut}, {"tol", tol}};
  const ZonalCertificate cert = zonal_certificate(body, degree_cut, tol);
  rep.results = {{"certificate", cert.to_json()}};
  rep.table.columns = {"degree", "coeff", "multiplier"};
  for (std::size_t i = 0; i < cert.degrees.size(); ++i)
    rep.table.rows.push_back({static_cast<double>(cert.degrees[i]), cert.coeffs[i], cert.multipliers[i]});
  rep.passed = cert.verdict != ZonalVerdict::certified_negative || !body.convex();
  rep.wall_seconds = clock.seconds();
  return rep;
}

ExperimentReport ballbody_report(const StarBody& body, const DensitySpec& f, const RuleSet& rules,
                                 std::size_t trials, std::uint64_t seed) {
  const Stopwatch clock;
  const std::size_t n = body.dim();
  ExperimentReport rep;
  rep.experiment = "ballbody";
  rep.seed = seed;
  rep.config = {{"K", body.describe()}, {"density", f.describe()}, {"rules", describe(rules)}, {"trials", trials}};
  const StarBody kf = ball_body(body, f);
  const NormAxiomCheck na = verify_norm_axioms(kf, trials, seed);
  const bool guaranteed = body.convex() && is_convex_measure(f.flags(), n);

  rep.table.columns.clear();
  for (std::size_t j = 0; j < n; ++j) rep.table.columns.push_back("xi_" + std::to_string(j + 1));
  for (const char* c : {"kf_section", "kf_err", "mu_section", "mu_err", "residual"}) rep.table.columns.push_back(c);
  Rng rng(seed);
  std::size_t identity_failures = 0;
  for (int i = 0; i < 8; ++i) {
    const Vec xi = rng.unit_vector(n);
    const SectionIdentity si = section_identity_residual(body, f, xi, rules);
    if (si.residual.value > 3.0 * si.residual.err) ++identity_failures;
    std::vector<double> row(xi.begin(), xi.end());
    row.insert(row.end(), {si.kf_section.value, si.kf_section.err, si.measure_section.value, si.measure_section.err,
                           si.residual.value});
    rep.table.rows.push_back(std::move(row));
  }
  const KlartagStudy ks = klartag_ratio_study(f, body, 64, rules, seed);
  rep.results = {{"triangle_violations", na.triangle_violations},
                 {"worst_triangle_gap", na.worst_gap},
                 {"homogeneity_violations", na.homogeneity_violations},
                 {"convexity_guaranteed", guaranteed},
                 {"section_identity_failures", identity_failures},
                 {"klartag", {{"min", ks.min}, {"max", ks.max}, {"global", to_json(ks.global)}}}};
  rep.passed = identity_failures == 0 && na.homogeneity_violations == 0 && ks.positive_finite &&
               (!guaranteed || na.triangle_violations == 0);
  rep.wall_seconds = clock.seconds();
  return rep;
}

}  // namespace bplab
