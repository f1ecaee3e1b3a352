#include "doctest.h"

#include <cmath>
#include <cstring>
#include <vector>

#include "bplab/kernels.hpp"
#include "bplab/rng.hpp"

using namespace bplab;
namespace k = bplab::kernels;

namespace {

std::vector<double> random_values(std::size_t count, std::uint64_t seed, double lo = -2.0, double hi = 2.0) {
  Rng rng(seed);
  std::vector<double> v(count);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

// Runs fn under each ISA and returns the results in order (scalar, avx2).
template <class Fn>
auto under_both(Fn fn) {
  const k::Isa saved = k::active_isa();
  k::set_isa(k::Isa::scalar);
  auto s = fn();
  k::set_isa(k::Isa::avx2);
  auto v = fn();
  k::set_isa(saved);
  return std::pair{s, v};
}

}  // namespace

TEST_CASE("isa selection") {
  CHECK(k::isa_supported(k::Isa::scalar));
  CHECK(std::string(k::isa_name(k::Isa::scalar)) == "scalar");
  const k::Isa saved = k::active_isa();
  k::set_isa(k::Isa::scalar);
  CHECK(k::active_isa() == k::Isa::scalar);
  k::set_isa(saved);
}

TEST_CASE("scalar kernels against naive loops") {
  const k::Isa saved = k::active_isa();
  k::set_isa(k::Isa::scalar);
  const auto w = random_values(37, 1);
  const auto v = random_values(37, 2);
  double naive = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) naive += w[i] * v[i];
  CHECK(k::weighted_sum(w, v) == doctest::Approx(naive).epsilon(1e-14));

  double ssd = 0.0;
  for (double x : v) ssd += (x - 0.3) * (x - 0.3);
  CHECK(k::sum_squared_deviation(v, 0.3) == doctest::Approx(ssd).epsilon(1e-14));

  const std::size_t dim = 3, count = 11;
  const auto block = random_values(dim * count, 3);
  const std::vector<double> inv{1.0, 0.5, 2.0};
  std::vector<double> out(count);
  for (auto kind : {k::NormKind::l1, k::NormKind::l2, k::NormKind::linf}) {
    k::norm_batch(kind, inv, block, count, out);
    for (std::size_t i = 0; i < count; ++i) {
      double l1 = 0.0, l2 = 0.0, li = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        const double y = std::fabs(block[j * count + i] * inv[j]);
        l1 += y;
        l2 += y * y;
        li = std::max(li, y);
      }
      const double want = kind == k::NormKind::l1 ? l1 : kind == k::NormKind::l2 ? std::sqrt(l2) : li;
      CHECK(out[i] == doctest::Approx(want).epsilon(1e-14));
    }
  }

  // Identity quadratic form reproduces the Euclidean norm.
  const std::vector<double> eye{1, 0, 0, 0, 1, 0, 0, 0, 1};
  std::vector<double> q(count);
  k::quadratic_gauge_batch(eye, dim, block, count, q);
  k::norm_batch(k::NormKind::l2, {std::vector<double>{1, 1, 1}}, block, count, out);
  for (std::size_t i = 0; i < count; ++i) CHECK(q[i] == doctest::Approx(out[i]).epsilon(1e-14));

  // Pair moduli.
  const auto b4 = random_values(4 * count, 4);
  std::vector<double> mod(2 * count);
  k::pair_modulus_batch(b4, 2, count, mod);
  for (std::size_t i = 0; i < count; ++i)
    CHECK(mod[count + i] == doctest::Approx(std::hypot(b4[2 * count + i], b4[3 * count + i])));
  k::set_isa(saved);
}

TEST_CASE("avx2 kernels are bit-identical to scalar") {
  if (!k::isa_supported(k::Isa::avx2)) {
    MESSAGE("AVX2 unsupported on this host; equivalence not exercised");
    return;
  }
  for (std::size_t count : {1u, 3u, 4u, 7u, 8u, 33u, 1000u}) {
    CAPTURE(count);
    const auto w = random_values(count, 10 + count);
    const auto v = random_values(count, 20 + count);
    auto [s1, a1] = under_both([&] { return k::weighted_sum(w, v); });
    CHECK(same_bits(s1, a1));
    auto [s2, a2] = under_both([&] { return k::sum_squared_deviation(v, 0.125); });
    CHECK(same_bits(s2, a2));

    for (std::size_t dim : {2u, 3u, 5u}) {
      const auto block = random_values(dim * count, 30 + dim);
      const auto inv = random_values(dim, 40 + dim, 0.5, 2.0);
      for (auto kind : {k::NormKind::l1, k::NormKind::l2, k::NormKind::linf}) {
        auto [s, a] = under_both([&] {
          std::vector<double> out(count);
          k::norm_batch(kind, inv, block, count, out);
          return out;
        });
        CHECK(same_bits(s, a));
      }
      const auto mat = random_values(dim * dim, 50 + dim);
      auto [sq, aq] = under_both([&] {
        std::vector<double> sym(dim * dim);
        for (std::size_t r = 0; r < dim; ++r)
          for (std::size_t c = 0; c < dim; ++c) sym[r * dim + c] = (r == c ? 4.0 : 0.0) + mat[r * dim + c] * mat[c * dim + r];
        std::vector<double> out(count);
        k::quadratic_gauge_batch(sym, dim, block, count, out);
        return out;
      });
      CHECK(same_bits(sq, aq));
      auto [sm, am] = under_both([&] {
        std::vector<double> out(dim * count);
        k::matvec_batch(mat, dim, dim, block, count, out);
        return out;
      });
      CHECK(same_bits(sm, am));
      const auto normals = random_values(4 * dim, 60 + dim);
      const auto inv_off = random_values(4, 70 + dim, 0.5, 1.5);
      auto [sh, ah] = under_both([&] {
        std::vector<double> out(count);
        k::halfspace_gauge_batch(normals, inv_off, dim, block, count, out);
        return out;
      });
      CHECK(same_bits(sh, ah));
    }
    const auto b6 = random_values(6 * count, 80);
    auto [sp, ap] = under_both([&] {
      std::vector<double> out(3 * count);
      k::pair_modulus_batch(b6, 3, count, out);
      return out;
    });
    CHECK(same_bits(sp, ap));
  }
}
