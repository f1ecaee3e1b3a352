#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace bplab {

/// Seeded generator with a portable output stream: mt19937_64 is fully
/// specified by the standard, and the transforms below are written out so no
/// implementation-defined distribution is involved.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

  /// Standard normal via Box-Muller.
  double normal();

  std::vector<double> normal_vector(std::size_t dim);

  /// Uniformly distributed point on S^{dim-1}.
  std::vector<double> unit_vector(std::size_t dim);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace bplab
