// bplab command-line driver: runs one experiment, writes <out>/<name>.json and
// .csv (plus .svg with --plot). Exit 0 when every asserted bound holds, 1 on a
// violation, 2 on configuration or numerical failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bplab/error.hpp"
#include "bplab/experiments.hpp"
#include "descriptors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitFailure = 2;

struct Common {
  std::string out;
  bool plot = false;
  std::uint64_t seed = 1;
  std::size_t dirs = 0;
  std::size_t sphere_nodes = 0;
  double radial_tol = 0.0;
};

struct Args {
  std::string density = "gaussian";
  std::string body_k;
  std::string body_m;
  bool no_construct = false;
  std::size_t n = 5;
  double p = 2.0;
  std::string t_grid = "10,31.622776601683793,100,316.22776601683796,1000";
  double lambda = 3.141592653589793;
  std::size_t cut = 48;
  double tol = 1e-8;
  std::size_t trials = 10000;
  std::size_t pairs = 100;
  bool all = false;
  bool lemmas = false;
  bool selfduality = false;
  bool ball_body = false;
};

bplab::RuleSet rules_for(std::size_t n, const Common& c, bool complex = false) {
  bplab::RuleSet rules = complex ? bplab::default_complex_rules(n) : bplab::default_rules(n);
  rules.sphere.seed = c.seed;
  if (c.sphere_nodes > 0) rules.sphere.size = c.sphere_nodes;
  if (c.radial_tol > 0.0) rules.radial_tol = c.radial_tol;
  return rules;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bplab::ConfigError("cannot write " + path.string());
  out << text;
}

std::string plot_for(const bplab::ExperimentReport& rep) {
  const auto& t = rep.table;
  auto column = [&](const std::string& name) {
    std::vector<double> v;
    for (std::size_t j = 0; j < t.columns.size(); ++j)
      if (t.columns[j] == name)
        for (const auto& row : t.rows) v.push_back(row[j]);
    return v;
  };
  if (rep.experiment == "counterexample")
    return bplab::svg_line_plot("ratio_bob against t", "t", "ratio_bob", column("t"), column("ratio_bob"), true, true);
  if (rep.experiment == "bp_suite" || rep.experiment == "complex_bp_suite")
    return bplab::svg_histogram("mu(K) / mu(M)", "ratio", column("ratio"), 20);
  if (rep.experiment == "bp_check" || rep.experiment == "complex_bp_check") {
    std::vector<double> k = column("mu_K_section");
    const std::vector<double> m = column("mu_M_section");
    for (std::size_t i = 0; i < k.size(); ++i) k[i] /= m[i];
    return bplab::svg_histogram("section ratio mu(K.xi) / mu(M.xi)", "ratio", k, 20);
  }
  return {};
}

int emit(const bplab::ExperimentReport& rep, const Common& c, const json& run_config) {
  const fs::path dir = c.out.empty() ? fs::path(".") : fs::path(c.out);
  fs::create_directories(dir);
  json j = rep.to_json();
  j["config"]["run"] = run_config;
  const std::string stem = rep.experiment + "-" + std::to_string(rep.seed);
  write_file(dir / (stem + ".json"), j.dump(2) + "\n");
  write_file(dir / (stem + ".csv"), rep.to_csv());
  if (c.plot) {
    const std::string svg = plot_for(rep);
    if (!svg.empty()) write_file(dir / (stem + ".svg"), svg);
  }
  std::printf("%s: %s (%.2f s) -> %s\n", rep.experiment.c_str(), rep.passed ? "ok" : "VIOLATION", rep.wall_seconds,
              (dir / stem).string().c_str());
  for (const auto& b : rep.bounds)
    std::printf("  bound %-12s %.6g %s%s\n", b.name.c_str(), b.bound, b.holds ? "holds" : "fails",
                b.asserted ? "" : " (informational)");
  return rep.passed ? 0 : kExitViolation;
}

// A JSON config {"experiment": "bp-check", "K": "lp:2:3", "plot": true, ...}
// becomes the equivalent argument list.
std::vector<std::string> config_to_args(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw bplab::ConfigError("cannot read config " + path.string());
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw bplab::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object() || !cfg.contains("experiment") || !cfg["experiment"].is_string())
    throw bplab::ConfigError("config needs a string field \"experiment\"");
  std::vector<std::string> args{cfg["experiment"].get<std::string>()};
  for (const auto& [key, value] : cfg.items()) {
    if (key == "experiment") continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
    } else if (value.is_string()) {
      args.push_back("--" + key);
      args.push_back(value.get<std::string>());
    } else if (value.is_number()) {
      args.push_back("--" + key);
      args.push_back(value.dump());
    } else {
      throw bplab::ConfigError("config field \"" + key + "\" must be a string, number or boolean");
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> raw(argv + 1, argv + argc);
  json run_config = {{"argv", raw}};
  try {
    for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
      if (raw[i] == "--config") {
        std::vector<std::string> expanded = config_to_args(raw[i + 1]);
        std::ifstream in(raw[i + 1]);
        run_config["config_file"] = json::parse(in);
        raw.erase(raw.begin() + static_cast<std::ptrdiff_t>(i), raw.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        raw.insert(raw.begin(), expanded.begin(), expanded.end());
        break;
      }
    }
  } catch (const bplab::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }

  CLI::App app{"Numerical checks of Busemann-Petty type comparisons for general measures"};
  app.require_subcommand(0, 1);
  Common c;
  Args a;
  if (const char* env = std::getenv("BPLAB_OUT")) c.out = env;
  bool list_bodies = false;
  bool list_densities = false;
  app.add_flag("--list-bodies", list_bodies, "Print the body descriptor grammar");
  app.add_flag("--list-densities", list_densities, "Print the density descriptor grammar");
  std::string unused_config;
  app.add_option("--config", unused_config, "JSON run configuration");

  auto common = [&](CLI::App* s) {
    s->add_option("--out", c.out, "Output directory (default: $BPLAB_OUT or .)");
    s->add_flag("--plot", c.plot, "Also write an SVG plot");
    s->add_option("--seed", c.seed, "Seed for directions and Monte Carlo rules");
  };
  auto rule_options = [&](CLI::App* s) {
    s->add_option("--dirs", c.dirs, "Sampled directions (0: 200 for n <= 4, 500 above)");
    s->add_option("--sphere-nodes", c.sphere_nodes, "Antithetic nodes on S^{n-1}");
    s->add_option("--radial-tol", c.radial_tol, "Radial quadrature tolerance");
  };

  auto* bp = app.add_subcommand("bp-check", "Compare mu(K) and mu(M) under section domination");
  auto* cbp = app.add_subcommand("complex-bp-check", "Complex-hyperplane comparison in R^{2m}");
  for (auto* s : {bp, cbp}) {
    common(s);
    rule_options(s);
    s->add_option("--density", a.density, "Density descriptor");
    s->add_option("--K", a.body_k, "Convex body K")->required();
    s->add_option("--M", a.body_m, "Star body M")->required();
    s->add_flag("--no-construct", a.no_construct, "Use K as given instead of rescaling it to dominate");
  }

  auto* suite = app.add_subcommand("bp-suite", "Seeded random pairs in n = 3, 4, 5");
  auto* csuite = app.add_subcommand("complex-bp-suite", "Seeded random complex pairs in R^4 and R^6");
  for (auto* s : {suite, csuite}) {
    common(s);
    s->add_option("--dirs", c.dirs, "Sampled directions per pair (0: default)");
    s->add_option("--pairs", a.pairs, "Number of pairs");
  }

  auto* hyp = app.add_subcommand("hyperplane", "mu(K) against max section times vol(K)^{1/n}");
  common(hyp);
  rule_options(hyp);
  hyp->add_option("--density", a.density, "Density descriptor");
  hyp->add_option("--K", a.body_k, "Convex body")->required();

  auto* cex = app.add_subcommand("counterexample", "ratio_bob on dilates of the ball for 1/(1+|x|^p)");
  common(cex);
  cex->add_option("--sphere-nodes", c.sphere_nodes, "Antithetic nodes on S^{n-1}");
  cex->add_option("--n", a.n, "Dimension");
  cex->add_option("--p", a.p, "Exponent, 0 < p < n");
  cex->add_option("--t", a.t_grid, "Increasing radii, comma-separated");

  auto* cs = app.add_subcommand("const-section", "Ball whose central sections all have measure Lambda");
  common(cs);
  cs->add_option("--density", a.density, "Rotation-invariant density descriptor");
  cs->add_option("--n", a.n, "Dimension");
  cs->add_option("--lambda", a.lambda, "Section measure Lambda");

  auto* rad = app.add_subcommand("radon", "Zonal Radon inversion certificate in R^3");
  common(rad);
  rad->add_option("--K", a.body_k, "Zonal body")->required();
  rad->add_option("--cut", a.cut, "Legendre degree cut");
  rad->add_option("--tol", a.tol, "Sup-norm residual tolerance");

  auto* bb = app.add_subcommand("ballbody", "Norm axioms and section identity of K_f");
  common(bb);
  bb->add_option("--K", a.body_k, "Body")->required();
  bb->add_option("--density", a.density, "Density descriptor");
  bb->add_option("--trials", a.trials, "Triangle-inequality trials");

  auto* ps = app.add_subcommand("property-suite", "Elementary lemmas, Radon self-duality, K_f identities");
  common(ps);
  ps->add_flag("--all", a.all, "Run every property group");
  ps->add_flag("--lemmas", a.lemmas, "Elementary lemma suites");
  ps->add_flag("--selfduality", a.selfduality, "Radon self-duality");
  ps->add_flag("--ball-body", a.ball_body, "K_f identities");
  ps->add_option("--trials", a.trials, "Trials per lemma suite");

  try {
    std::vector<std::string> reversed(raw.rbegin(), raw.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitFailure;
  }

  if (list_bodies || list_densities) {
    if (list_bodies) std::cout << bplab::cli::body_help();
    if (list_densities) std::cout << bplab::cli::density_help();
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return kExitFailure;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    run_config["experiment"] = name;
    const bplab::BpOptions bp_opts{!a.no_construct};
    if (name == "bp-check" || name == "complex-bp-check") {
      const bplab::StarBody k = bplab::cli::parse_body(a.body_k);
      const bplab::StarBody m = bplab::cli::parse_body(a.body_m);
      const bplab::DensitySpec f = bplab::cli::parse_density(a.density, k.dim());
      const auto rules = rules_for(k.dim(), c, name == "complex-bp-check");
      return emit(name == "bp-check" ? bplab::bp_check(f, k, m, c.dirs, rules, c.seed, bp_opts)
                                     : bplab::complex_bp_check(f, k, m, c.dirs, rules, c.seed, bp_opts),
                  c, run_config);
    }
    if (name == "bp-suite") {
      bplab::SuiteOptions o;
      o.pairs = a.pairs;
      o.n_dirs = c.dirs;
      o.seed = c.seed;
      return emit(bplab::bp_suite(o), c, run_config);
    }
    if (name == "complex-bp-suite") {
      bplab::ComplexSuiteOptions o;
      o.pairs = a.pairs == 100 ? 25 : a.pairs;
      o.n_dirs = c.dirs;
      o.seed = c.seed;
      return emit(bplab::complex_bp_suite(o), c, run_config);
    }
    if (name == "hyperplane") {
      const bplab::StarBody k = bplab::cli::parse_body(a.body_k);
      const bplab::DensitySpec f = bplab::cli::parse_density(a.density, k.dim());
      return emit(bplab::hyperplane_report(f, k, rules_for(k.dim(), c), c.dirs, c.seed), c, run_config);
    }
    if (name == "counterexample") {
      return emit(bplab::counterexample_report(a.n, a.p, bplab::cli::parse_list(a.t_grid), rules_for(a.n, c)), c,
                  run_config);
    }
    if (name == "const-section") {
      const bplab::DensitySpec f = bplab::cli::parse_density(a.density, a.n);
      return emit(bplab::const_section_report(f, a.lambda, rules_for(a.n, c)), c, run_config);
    }
    if (name == "radon") {
      return emit(bplab::radon_report(bplab::cli::parse_body(a.body_k), a.cut, a.tol), c, run_config);
    }
    if (name == "ballbody") {
      const bplab::StarBody k = bplab::cli::parse_body(a.body_k);
      const bplab::DensitySpec f = bplab::cli::parse_density(a.density, k.dim());
      return emit(bplab::ballbody_report(k, f, rules_for(k.dim(), c), a.trials, c.seed), c, run_config);
    }
    if (name == "property-suite") {
      bplab::PropertySuiteOptions o;
      o.trials = a.trials;
      o.seed = c.seed;
      const bool any = a.lemmas || a.selfduality || a.ball_body;
      o.lemmas = a.all || !any || a.lemmas;
      o.selfduality = a.all || !any || a.selfduality;
      o.ball_body = a.all || !any || a.ball_body;
      return emit(bplab::property_suite(o), c, run_config);
    }
    std::fprintf(stderr, "error: unknown experiment '%s'\n", name.c_str());
    return kExitFailure;
  } catch (const bplab::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
}
