// AVX2 variants. Functions carry target attributes instead of a TU-wide -mavx2
// so that no inline library code in this file is compiled for AVX2 and then
// picked by the linker for machines without it.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "kernels_impl.hpp"

#define BPLAB_AVX2 __attribute__((target("avx2")))

namespace bplab::kernels::detail {
namespace {

BPLAB_AVX2 inline __m256d abs_pd(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

// Mirrors `acc > x ? acc : x` of the scalar path lane by lane.
BPLAB_AVX2 inline __m256d max_of(__m256d acc, __m256d x) {
  const __m256d gt = _mm256_cmp_pd(acc, x, _CMP_GT_OQ);
  return _mm256_blendv_pd(x, acc, gt);
}

inline double max_of(double acc, double x) { return acc > x ? acc : x; }

BPLAB_AVX2 double weighted_sum(const double* w, const double* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(v + i)));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (; i < n; ++i) lane[i & 3] += w[i] * v[i];
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

BPLAB_AVX2 double sum_squared_deviation(const double* v, std::size_t n, double center) {
  const __m256d c = _mm256_set1_pd(center);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(v + i), c);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  for (; i < n; ++i) {
    const double d = v[i] - center;
    lane[i & 3] += d * d;
  }
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

BPLAB_AVX2 void norm_batch(NormKind kind, const double* inv_scale, std::size_t dim, const double* block,
                           std::size_t count, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < dim; ++j) {
      const __m256d t = abs_pd(_mm256_mul_pd(_mm256_loadu_pd(block + j * count + i), _mm256_set1_pd(inv_scale[j])));
      switch (kind) {
        case NormKind::l1: acc = _mm256_add_pd(acc, t); break;
        case NormKind::l2: acc = _mm256_add_pd(acc, _mm256_mul_pd(t, t)); break;
        case NormKind::linf: acc = max_of(acc, t); break;
      }
    }
    if (kind == NormKind::l2) acc = _mm256_sqrt_pd(acc);
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < count; ++i) {
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

BPLAB_AVX2 void quadratic_gauge_batch(const double* a, std::size_t dim, const double* block, std::size_t count,
                                      double* out) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < dim; ++j) {
      const __m256d xj = _mm256_loadu_pd(block + j * count + i);
      for (std::size_t k = 0; k < dim; ++k) {
        const __m256d t = _mm256_mul_pd(_mm256_set1_pd(a[j * dim + k]), xj);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(t, _mm256_loadu_pd(block + k * count + i)));
      }
    }
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(max_of(acc, _mm256_setzero_pd())));
  }
  for (; i < count; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double xj = block[j * count + i];
      for (std::size_t k = 0; k < dim; ++k) acc += (a[j * dim + k] * xj) * block[k * count + i];
    }
    out[i] = std::sqrt(max_of(acc, 0.0));
  }
}

BPLAB_AVX2 void matvec_batch(const double* t, std::size_t rows, std::size_t cols, const double* block,
                             std::size_t count, double* out) {
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t c = 0; c < cols; ++c) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(t[r * cols + c]), _mm256_loadu_pd(block + c * count + i)));
      }
      _mm256_storeu_pd(out + r * count + i, acc);
    }
    for (; i < count; ++i) {
      double acc = 0.0;
      for (std::size_t c = 0; c < cols; ++c) acc += t[r * cols + c] * block[c * count + i];
      out[r * count + i] = acc;
    }
  }
}

BPLAB_AVX2 void halfspace_gauge_batch(const double* normals, const double* inv_offsets, std::size_t rows,
                                      std::size_t dim, const double* block, std::size_t count, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    __m256d best = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
    for (std::size_t r = 0; r < rows; ++r) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t c = 0; c < dim; ++c) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(normals[r * dim + c]), _mm256_loadu_pd(block + c * count + i)));
      }
      best = max_of(best, _mm256_mul_pd(acc, _mm256_set1_pd(inv_offsets[r])));
    }
    _mm256_storeu_pd(out + i, best);
  }
  for (; i < count; ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < rows; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < dim; ++c) acc += normals[r * dim + c] * block[c * count + i];
      best = max_of(best, acc * inv_offsets[r]);
    }
    out[i] = best;
  }
}

BPLAB_AVX2 void pair_modulus_batch(const double* block, std::size_t pairs, std::size_t count, double* out) {
  for (std::size_t k = 0; k < pairs; ++k) {
    const double* re = block + (2 * k) * count;
    const double* im = block + (2 * k + 1) * count;
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
      const __m256d x = _mm256_loadu_pd(re + i);
      const __m256d y = _mm256_loadu_pd(im + i);
      _mm256_storeu_pd(out + k * count + i, _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y))));
    }
    for (; i < count; ++i) out[k * count + i] = std::sqrt(re[i] * re[i] + im[i] * im[i]);
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{weighted_sum,         sum_squared_deviation, norm_batch,
                                 quadratic_gauge_batch, matvec_batch,         halfspace_gauge_batch,
                                 pair_modulus_batch};
  return table;
}

}  // namespace bplab::kernels::detail

#endif
