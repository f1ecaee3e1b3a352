#pragma once

// Seeded, deterministic quadrature on spheres, great subspheres and radial
// intervals. Every integral in the library flows through this module.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "bplab/estimate.hpp"
#include "bplab/linalg.hpp"

namespace bplab {

enum class SphereMethod { monte_carlo, antithetic_mc, product_gauss };

std::string method_name(SphereMethod method);
SphereMethod parse_method(const std::string& name);

/// Rule request. For product_gauss `size` is a node budget: on the circle it
/// is the exact node count, in higher dimensions the largest level m with
/// 2m * m^(n-2) <= size is used.
struct SphereRuleSpec {
  SphereMethod method = SphereMethod::antithetic_mc;
  std::size_t size = 20000;
  std::uint64_t seed = 1;
};

/// |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2).
double sphere_area(std::size_t n);

/// vol_n(B_2^n).
double ball_volume(std::size_t n);

/// Node-weight set on S^{n-1} (possibly embedded in a larger ambient space).
/// Nodes are kept both point-major (node(i)) and coordinate-major (block())
/// for the batch kernels. Product rules carry a coarser companion rule used for
/// the refinement-gap error estimate.
class SphereRule {
 public:
  SphereRule(std::size_t ambient_dim, std::size_t sphere_dim, SphereMethod method, std::uint64_t seed,
             std::vector<double> nodes, std::vector<double> weights);

  /// Dimension of the space the nodes live in.
  std::size_t dim() const { return dim_; }
  /// n such that the rule integrates over a copy of S^{n-1}.
  std::size_t sphere_dim() const { return sphere_dim_; }
  std::size_t size() const { return weights_.size(); }
  SphereMethod method() const { return method_; }
  std::uint64_t seed() const { return seed_; }

  std::span<const double> node(std::size_t i) const { return {nodes_.data() + i * dim_, dim_}; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> block() const { return block_; }
  std::span<const double> weights() const { return weights_; }
  double total_weight() const;

  const SphereRule* coarse() const { return coarse_.get(); }
  void set_coarse(SphereRule coarse);

 private:
  std::size_t dim_;
  std::size_t sphere_dim_;
  SphereMethod method_;
  std::uint64_t seed_;
  std::vector<double> nodes_;
  std::vector<double> block_;
  std::vector<double> weights_;
  std::shared_ptr<const SphereRule> coarse_;
};

/// Builds a rule on S^{n-1}. Deterministic for a fixed seed; weights are
/// normalized so they sum to |S^{n-1}|. Antithetic rules store each node
/// followed by its negative.
SphereRule sphere_rule(std::size_t n, SphereMethod method, std::size_t size, std::uint64_t seed);
SphereRule sphere_rule(std::size_t n, const SphereRuleSpec& spec);

/// Maps a rule on S^{k-1} into R^d through the orthonormal vectors `basis`
/// (k vectors of length d). Weights and the coarse companion carry over.
SphereRule embed_rule(const SphereRule& base, const std::vector<Vec>& basis);

/// Rule on the great subsphere S^{n-1} cap xi^perp.
struct SubsphereRule {
  Vec xi;
  std::vector<Vec> basis;
  SphereRule rule;
};

SubsphereRule subsphere_rule(std::span<const double> xi, const SphereRuleSpec& spec);
/// Same, reusing a prebuilt rule on S^{n-2}.
SubsphereRule subsphere_rule(std::span<const double> xi, const SphereRule& base);

/// Per-node integrand values plus per-node error contributions.
struct NodeValues {
  std::vector<double> values;
  std::vector<double> errs;
  std::size_t n_evals = 0;
};

/// Sum_i w_i v_i with the method's error estimate (Monte Carlo standard error,
/// from antithetic pair means for antithetic rules), plus sum_i w_i err_i.
/// Product rules report zero statistical error here; see integrate_nodes.
Estimate reduce_nodes(const SphereRule& rule, const NodeValues& nv);

/// Evaluates `values_for` on the rule and, for product rules, on its coarse
/// companions. The error estimate is the larger of the fine-coarse gap and a
/// quarter of the coarse-coarser gap; the second term keeps the estimate honest
/// when a kinked integrand makes one gap accidentally small.
template <class ValuesFor>
Estimate integrate_nodes(const SphereRule& rule, ValuesFor&& values_for) {
  Estimate e = reduce_nodes(rule, values_for(rule));
  if (const SphereRule* coarse = rule.coarse()) {
    const Estimate c = reduce_nodes(*coarse, values_for(*coarse));
    double gap = e.value > c.value ? e.value - c.value : c.value - e.value;
    e.n_evals += c.n_evals;
    if (const SphereRule* coarser = coarse->coarse()) {
      const Estimate cc = reduce_nodes(*coarser, values_for(*coarser));
      const double outer = (c.value > cc.value ? c.value - cc.value : cc.value - c.value) / 4.0;
      if (outer > gap) gap = outer;
      e.n_evals += cc.n_evals;
    }
    e.err += gap;
  }
  return e;
}

/// Integral of f over the rule's sphere. Exceptions thrown by f are rethrown
/// as EvaluationError carrying the node index.
Estimate integrate_sphere(const std::function<double(std::span<const double>)>& f, const SphereRule& rule);

/// Gauss rule on [-1, 1] for the weight (1 - t^2)^alpha (Golub-Welsch).
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_gegenbauer(std::size_t m, double alpha);
/// Cached Gauss-Legendre rule.
const GaussRule& gauss_legendre(std::size_t m);

/// Tail treatment for radial integrals over [0, inf): integrate to `cutoff`
/// and add the analytically known `tail` beyond it.
struct RadialTail {
  double cutoff = 0.0;
  double tail = 0.0;
};

/// int_0^R r^k g(r) dr by adaptive 8-point Gauss-Legendre panels: a panel is
/// accepted when its estimate and the sum over its two halves agree to `tol`
/// (relative to the panel, with a floor relative to the whole integral).
/// Throws QuadratureFailure if refinement does not converge.
Estimate radial_integral(const std::function<double(double)>& g, int k, double r_max, double tol);
Estimate radial_integral(const std::function<double(double)>& g, int k, const RadialTail& tail, double tol);

[[noreturn]] void throw_radial_failure_domain(double r_max);

namespace detail {

inline double ipow(double r, int k) {
  double p = 1.0;
  for (int i = 0; i < k; ++i) p *= r;
  return p;
}

[[noreturn]] void throw_radial_failure(double lo, double hi, double diff, std::size_t evals);

constexpr int kRadialMaxDepth = 48;
constexpr std::size_t kRadialMaxEvals = 400000;

template <class G>
struct RadialRefiner {
  G& g;
  int k;
  double tol;
  double scale;
  double length;
  const GaussRule& rule;
  Estimate acc{};

  double panel(double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double r = mid + half * rule.nodes[i];
      s += rule.weights[i] * ipow(r, k) * g(r);
    }
    acc.n_evals += rule.nodes.size();
    return s * half;
  }

  void refine(double lo, double hi, double whole, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double left = panel(lo, mid);
    const double right = panel(mid, hi);
    const double halves = left + right;
    const double diff = halves > whole ? halves - whole : whole - halves;
    const double mag = halves < 0 ? -halves : halves;
    const double floor = scale * (hi - lo) / length;
    if (diff <= tol * (mag > floor ? mag : floor)) {
      acc.value += halves;
      acc.err += diff;
      return;
    }
    if (depth >= kRadialMaxDepth || acc.n_evals > kRadialMaxEvals) throw_radial_failure(lo, hi, diff, acc.n_evals);
    refine(lo, mid, left, depth + 1);
    refine(mid, hi, right, depth + 1);
  }
};

}  // namespace detail

/// Template form of radial_integral for hot paths (no type erasure).
template <class G>
Estimate radial_integral_t(G&& g, int k, double r_max, double tol) {
  if (!(r_max >= 0.0)) throw_radial_failure_domain(r_max);
  if (r_max == 0.0) return {};
  detail::RadialRefiner<std::remove_reference_t<G>> ref{g, k, tol, 0.0, r_max, gauss_legendre(8)};
  const double whole = ref.panel(0.0, r_max);
  ref.scale = whole < 0 ? -whole : whole;
  ref.refine(0.0, r_max, whole, 0);
  return ref.acc;
}

}  // namespace bplab
