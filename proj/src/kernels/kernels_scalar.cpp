#include <cmath>
#include <limits>

#include "kernels_impl.hpp"

namespace bplab::kernels::detail {
namespace {

// Reductions keep four interleaved partial sums so that the vector variants
// can reproduce them exactly.

double weighted_sum(const double* w, const double* v, std::size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) lane[l] += w[i + l] * v[i + l];
  }
  for (; i < n; ++i) lane[i & 3] += w[i] * v[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

double sum_squared_deviation(const double* v, std::size_t n, double center) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const double d = v[i + l] - center;
      lane[l] += d * d;
    }
  }
  for (; i < n; ++i) {
    const double d = v[i] - center;
    lane[i & 3] += d * d;
  }
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

inline double max_of(double acc, double x) { return acc > x ? acc : x; }

void norm_batch(NormKind kind, const double* inv_scale, std::size_t dim, const double* block,
                std::size_t count, double* out) {
  for (std::size_t i = 0; i < count; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double t = std::fabs(block[j * count + i] * inv_scale[j]);
      switch (kind) {
        case NormKind::l1: acc += t; break;
        case NormKind::l2: acc += t * t; break;
        case NormKind::linf: acc = max_of(acc, t); break;
      }
    }
    out[i] = kind == NormKind::l2 ? std::sqrt(acc) : acc;
  }
}

void quadratic_gauge_batch(const double* a, std::size_t dim, const double* block, std::size_t count,
                           double* out) {
  for (std::size_t i = 0; i < count; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double xj = block[j * count + i];
      for (std::size_t k = 0; k < dim; ++k) acc += (a[j * dim + k] * xj) * block[k * count + i];
    }
    out[i] = std::sqrt(max_of(acc, 0.0));
  }
}

void matvec_batch(const double* t, std::size_t rows, std::size_t cols, const double* block,
                  std::size_t count, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < count; ++i) {
      double acc = 0.0;
      for (std::size_t c = 0; c < cols; ++c) acc += t[r * cols + c] * block[c * count + i];
      out[r * count + i] = acc;
    }
  }
}

void halfspace_gauge_batch(const double* normals, const double* inv_offsets, std::size_t rows,
                           std::size_t dim, const double* block, std::size_t count, double* out) {
  for (std::size_t i = 0; i < count; ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < rows; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) acc += normals[r * dim + c] * block[c * count + i];
      best = max_of(best, acc * inv_offsets[r]);
    }
    out[i] = best;
  }
}

void pair_modulus_batch(const double* block, std::size_t pairs, std::size_t count, double* out) {
  for (std::size_t k = 0; k < pairs; ++k) {
    const double* re = block + (2 * k) * count;
    const double* im = block + (2 * k + 1) * count;
    for (std::size_t i = 0; i < count; ++i) out[k * count + i] = std::sqrt(re[i] * re[i] + im[i] * im[i]);
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{weighted_sum,         sum_squared_deviation, norm_batch,
                                 quadratic_gauge_batch, matvec_batch,         halfspace_gauge_batch,
                                 pair_modulus_batch};
  return table;
}

}  // namespace bplab::kernels::detail
