#pragma once

#include <cstddef>

#include "bplab/kernels.hpp"

namespace bplab::kernels::detail {

struct KernelTable {
  double (*weighted_sum)(const double* w, const double* v, std::size_t n);
  double (*sum_squared_deviation)(const double* v, std::size_t n, double center);
  void (*norm_batch)(NormKind kind, const double* inv_scale, std::size_t dim, const double* block,
                     std::size_t count, double* out);
  void (*quadratic_gauge_batch)(const double* a, std::size_t dim, const double* block, std::size_t count,
                                double* out);
  void (*matvec_batch)(const double* t, std::size_t rows, std::size_t cols, const double* block,
                       std::size_t count, double* out);
  void (*halfspace_gauge_batch)(const double* normals, const double* inv_offsets, std::size_t rows,
                                std::size_t dim, const double* block, std::size_t count, double* out);
  void (*pair_modulus_batch)(const double* block, std::size_t pairs, std::size_t count, double* out);
};

const KernelTable& scalar_table();
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table();
#endif

}  // namespace bplab::kernels::detail
