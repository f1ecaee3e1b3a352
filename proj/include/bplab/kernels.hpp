#pragma once

// Data-parallel inner loops behind the geometry and quadrature modules.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected at runtime. The two perform the same IEEE operations in the
// same order (reductions use four fixed lanes in both), so their results are
// bit-identical and the choice of ISA never changes a reported number.
//
// Point blocks are coordinate-major: block[j * count + i] is coordinate j of
// point i.

#include <cstddef>
#include <span>

namespace bplab::kernels {

enum class Isa { scalar, avx2 };

enum class NormKind { l1, l2, linf };

const char* isa_name(Isa isa);
bool isa_supported(Isa isa);

/// ISA used by the dispatching entry points. Defaults to the best supported
/// one; the BPLAB_SIMD environment variable ("scalar" or "avx2") overrides it.
Isa active_isa();

/// Forces an ISA (tests and benchmarks). Throws ConfigError if unsupported.
void set_isa(Isa isa);

/// Sum of w[i] * v[i].
double weighted_sum(std::span<const double> w, std::span<const double> v);

/// Sum of (v[i] - center)^2.
double sum_squared_deviation(std::span<const double> v, double center);

/// out[i] = norm of (x_j(i) * inv_scale[j])_j for the given kind.
void norm_batch(NormKind kind, std::span<const double> inv_scale, std::span<const double> block,
                std::size_t count, std::span<double> out);

/// out[i] = sqrt(x(i)^T A x(i)) with A row-major dim x dim.
void quadratic_gauge_batch(std::span<const double> a, std::size_t dim, std::span<const double> block,
                           std::size_t count, std::span<double> out);

/// out_block = T * block for a row-major rows x cols matrix T.
void matvec_batch(std::span<const double> t, std::size_t rows, std::size_t cols,
                  std::span<const double> block, std::size_t count, std::span<double> out_block);

/// out[i] = max_r <normal_r, x(i)> * inv_offset[r].
void halfspace_gauge_batch(std::span<const double> normals, std::span<const double> inv_offsets,
                           std::size_t dim, std::span<const double> block, std::size_t count,
                           std::span<double> out);

/// out_block row k = sqrt(x_{2k}^2 + x_{2k+1}^2): moduli of the complex coordinates.
void pair_modulus_batch(std::span<const double> block, std::size_t pairs, std::size_t count,
                        std::span<double> out_block);

}  // namespace bplab::kernels
