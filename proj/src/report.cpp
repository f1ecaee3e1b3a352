#include "bplab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bplab/error.hpp"

namespace bplab {

using nlohmann::json;

std::string verdict_name(DominationVerdict v) {
  switch (v) {
    case DominationVerdict::verified: return "verified";
    case DominationVerdict::violated: return "violated";
    case DominationVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const Estimate& e) { return {{"value", e.value}, {"err", e.err}, {"n_evals", e.n_evals}}; }

json ExperimentReport::to_json() const {
  json j;
  j["experiment"] = experiment;
  j["seed"] = seed;
  j["config"] = config;
  j["results"] = results;
  j["domination"] = domination ? json(verdict_name(*domination)) : json(nullptr);
  json b = json::array();
  for (const auto& v : bounds)
    b.push_back({{"name", v.name}, {"bound", v.bound}, {"asserted", v.asserted}, {"holds", v.holds}});
  j["bounds"] = b;
  j["table"] = {{"columns", table.columns}, {"rows", table.rows}};
  j["passed"] = passed;
  j["wall_seconds"] = wall_seconds;
  return j;
}

std::string ExperimentReport::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 60.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Axis {
  double lo, hi;
  bool log;
  double to_unit(double v) const {
    const double a = log ? std::log10(v) : v;
    const double l = log ? std::log10(lo) : lo;
    const double h = log ? std::log10(hi) : hi;
    return h > l ? (a - l) / (h - l) : 0.5;
  }
  double at(double u) const {
    if (!log) return lo + u * (hi - lo);
    return std::pow(10.0, std::log10(lo) + u * (std::log10(hi) - std::log10(lo)));
  }
};

std::string frame(const std::string& title, const std::string& x_label, const std::string& y_label, const Axis& x,
                  const Axis& y) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
    << "</text>\n";
  const double x0 = kMargin, x1 = kWidth - kMargin / 2, y0 = kHeight - kMargin, y1 = kMargin / 1.5;
  s << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(y0)
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x0) << "\" y2=\"" << num(y1)
    << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double u = i / 4.0;
    const double px = x0 + u * (x1 - x0);
    const double py = y0 - u * (y0 - y1);
    s << "<text x=\"" << num(px) << "\" y=\"" << num(y0 + 16) << "\" text-anchor=\"middle\">" << tick(x.at(u))
      << "</text>\n";
    s << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">" << tick(y.at(u))
      << "</text>\n";
  }
  s << "<text x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(kHeight - 16) << "\" text-anchor=\"middle\">"
    << escape(x_label) << "</text>\n";
  s << "<text x=\"16\" y=\"" << num((y0 + y1) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << num((y0 + y1) / 2) << ")\">" << escape(y_label) << "</text>\n";
  return s.str();
}

Axis make_axis(const std::vector<double>& v, bool log) {
  if (v.empty()) return {0.0, 1.0, false};
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  Axis a{*lo, *hi, log};
  if (log && !(a.lo > 0.0)) throw InputDomainError("log axis needs positive data");
  if (a.hi == a.lo) {
    a.lo = log ? a.lo / 2 : a.lo - 1;
    a.hi = log ? a.hi * 2 : a.hi + 1;
  }
  return a;
}

}  // namespace

std::string svg_line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                          const std::vector<double>& xs, const std::vector<double>& ys, bool log_x, bool log_y) {
  if (xs.size() != ys.size()) throw InputDomainError("plot: x and y sizes differ");
  const Axis x = make_axis(xs, log_x);
  const Axis y = make_axis(ys, log_y);
  std::ostringstream s;
  s << frame(title, x_label, y_label, x, y);
  const double x0 = kMargin, x1 = kWidth - kMargin / 2, y0 = kHeight - kMargin, y1 = kMargin / 1.5;
  s << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s << ' ';
    s << num(x0 + x.to_unit(xs[i]) * (x1 - x0)) << ',' << num(y0 - y.to_unit(ys[i]) * (y0 - y1));
  }
  s << "\"/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    s << "<circle cx=\"" << num(x0 + x.to_unit(xs[i]) * (x1 - x0)) << "\" cy=\""
      << num(y0 - y.to_unit(ys[i]) * (y0 - y1)) << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  s << "</svg>\n";
  return s.str();
}

std::string svg_histogram(const std::string& title, const std::string& x_label, const std::vector<double>& values,
                          std::size_t bins) {
  if (bins == 0) throw InputDomainError("histogram needs at least one bin");
  const Axis x = make_axis(values, false);
  std::vector<double> counts(bins, 0.0);
  for (double v : values) {
    auto b = static_cast<std::size_t>(x.to_unit(v) * static_cast<double>(bins));
    counts[std::min(b, bins - 1)] += 1.0;
  }
  const double top = counts.empty() ? 1.0 : std::max(1.0, *std::max_element(counts.begin(), counts.end()));
  const Axis y{0.0, top, false};
  std::ostringstream s;
  s << frame(title, x_label, "count", x, y);
  const double x0 = kMargin, x1 = kWidth - kMargin / 2, y0 = kHeight - kMargin, y1 = kMargin / 1.5;
  const double bw = (x1 - x0) / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    const double h = counts[b] / top * (y0 - y1);
    s << "<rect x=\"" << num(x0 + b * bw) << "\" y=\"" << num(y0 - h) << "\" width=\"" << num(bw * 0.9)
      << "\" height=\"" << num(h) << "\" fill=\"#2ca02c\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace bplab
