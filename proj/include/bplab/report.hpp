#pragma once

// Experiment reports and their JSON / CSV / SVG renderings.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bplab/estimate.hpp"

namespace bplab {

enum class DominationVerdict { verified, violated, inconclusive };
std::string verdict_name(DominationVerdict v);

struct BoundVerdict {
  std::string name;
  double bound = 0.0;
  /// Informational bounds are recorded but never fail a run.
  bool asserted = true;
  bool holds = true;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
  std::string experiment;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();
  Table table;
  nlohmann::json results = nlohmann::json::object();
  std::optional<DominationVerdict> domination;
  std::vector<BoundVerdict> bounds;
  /// False when an asserted bound or property failed.
  bool passed = true;
  double wall_seconds = 0.0;

  nlohmann::json to_json() const;
  /// Header plus one line per row, numbers with 17 significant digits.
  std::string to_csv() const;
};

nlohmann::json to_json(const Estimate& e);

/// %.17g formatting.
std::string format_double(double v);

/// Self-contained SVG polyline plot. Log axes need positive data.
std::string svg_line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                          const std::vector<double>& xs, const std::vector<double>& ys, bool log_x, bool log_y);

/// Self-contained SVG histogram with `bins` equal-width bins.
std::string svg_histogram(const std::string& title, const std::string& x_label, const std::vector<double>& values,
                          std::size_t bins);

}  // namespace bplab
