#include <atomic>
#include <cstdlib>
#include <string_view>

#include "bplab/error.hpp"
#include "kernels_impl.hpp"

namespace bplab::kernels {
namespace {

#if defined(__x86_64__) || defined(_M_X64)
constexpr bool kX86 = true;
#else
constexpr bool kX86 = false;
#endif

Isa initial_isa() {
  if (const char* env = std::getenv("BPLAB_SIMD")) {
    const std::string_view v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && isa_supported(Isa::avx2)) return Isa::avx2;
  }
  return isa_supported(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

const detail::KernelTable& table() {
#if defined(__x86_64__) || defined(_M_X64)
  if (current().load(std::memory_order_relaxed) == Isa::avx2) return detail::avx2_table();
#endif
  return detail::scalar_table();
}

void require_size(std::size_t have, std::size_t need, const char* what) {
  if (have < need) throw ConfigError(std::string("kernel buffer too small: ") + what);
}

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
  if (isa == Isa::scalar) return true;
  if constexpr (kX86) {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
  }
  return false;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) throw ConfigError(std::string("ISA not supported on this CPU: ") + isa_name(isa));
  current().store(isa, std::memory_order_relaxed);
}

double weighted_sum(std::span<const double> w, std::span<const double> v) {
  require_size(w.size(), v.size(), "weights");
  return table().weighted_sum(w.data(), v.data(), v.size());
}

double sum_squared_deviation(std::span<const double> v, double center) {
  return table().sum_squared_deviation(v.data(), v.size(), center);
}

void norm_batch(NormKind kind, std::span<const double> inv_scale, std::span<const double> block,
                std::size_t count, std::span<double> out) {
  require_size(block.size(), inv_scale.size() * count, "block");
  require_size(out.size(), count, "out");
  table().norm_batch(kind, inv_scale.data(), inv_scale.size(), block.data(), count, out.data());
}

void quadratic_gauge_batch(std::span<const double> a, std::size_t dim, std::span<const double> block,
                           std::size_t count, std::span<double> out) {
  require_size(a.size(), dim * dim, "matrix");
  require_size(block.size(), dim * count, "block");
  require_size(out.size(), count, "out");
  table().quadratic_gauge_batch(a.data(), dim, block.data(), count, out.data());
}

void matvec_batch(std::span<const double> t, std::size_t rows, std::size_t cols, std::span<const double> block,
                  std::size_t count, std::span<double> out_block) {
  require_size(t.size(), rows * cols, "matrix");
  require_size(block.size(), cols * count, "block");
  require_size(out_block.size(), rows * count, "out");
  table().matvec_batch(t.data(), rows, cols, block.data(), count, out_block.data());
}

void halfspace_gauge_batch(std::span<const double> normals, std::span<const double> inv_offsets,
                           std::size_t dim, std::span<const double> block, std::size_t count,
                           std::span<double> out) {
  require_size(normals.size(), inv_offsets.size() * dim, "normals");
  require_size(block.size(), dim * count, "block");
  require_size(out.size(), count, "out");
  table().halfspace_gauge_batch(normals.data(), inv_offsets.data(), inv_offsets.size(), dim, block.data(), count,
                                out.data());
}

void pair_modulus_batch(std::span<const double> block, std::size_t pairs, std::size_t count,
                        std::span<double> out_block) {
  require_size(block.size(), 2 * pairs * count, "block");
  require_size(out_block.size(), pairs * count, "out");
  table().pair_modulus_batch(block.data(), pairs, count, out_block.data());
}

}  // namespace bplab::kernels
