// The AVX2 kernels must agree with the scalar reference to round-off.

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "cylwave/kernels.hpp"

using namespace cylwave::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

double abs_sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

}  // namespace

TEST_CASE("scalar stencil matches a direct loop") {
  std::mt19937_64 rng(3);
  const auto& k = scalar_table();
  for (std::size_t lanes : {1u, 2u}) {
    const std::size_t n = 9;
    const auto x = random_vector(n * lanes, rng);
    std::vector<double> y(n * lanes);
    k.stencil_apply(x.data(), y.data(), n, lanes, 2.5, -1.25);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t l = 0; l < lanes; ++l) {
        const double left = i > 0 ? x[(i - 1) * lanes + l] : 0.0;
        const double right = i + 1 < n ? x[(i + 1) * lanes + l] : 0.0;
        CHECK(y[i * lanes + l] == doctest::Approx(2.5 * x[i * lanes + l] - 1.25 * (left + right)).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("avx2 kernels agree with scalar reference") {
  const KernelTable* fast = avx2_table();
  if (fast == nullptr || !cpu_has_avx2()) {
    MESSAGE("AVX2 variant unavailable on this build or machine");
    return;
  }
  const auto& ref = scalar_table();
  std::mt19937_64 rng(5);
  for (std::size_t lanes : {1u, 2u}) {
    for (std::size_t n = 0; n <= 41; ++n) {
      const auto x = random_vector(n * lanes, rng);
      const auto y = random_vector(n * lanes, rng);
      auto w = random_vector(n, rng);
      for (auto& v : w) v = std::abs(v);
      const double diag = 3.7;
      const double off = -1.3;

      std::vector<double> ya(n * lanes), yb(n * lanes);
      ref.stencil_apply(x.data(), ya.data(), n, lanes, diag, off);
      fast->stencil_apply(x.data(), yb.data(), n, lanes, diag, off);
      for (std::size_t i = 0; i < ya.size(); ++i) CHECK(std::abs(ya[i] - yb[i]) <= 1e-14 * (1.0 + std::abs(ya[i])));

      const double scale = 10.0 * (abs_sum(x) + 1.0) * (abs_sum(y) + 1.0);
      CHECK(std::abs(ref.stencil_bilinear(x.data(), y.data(), n, lanes, diag, off) -
                     fast->stencil_bilinear(x.data(), y.data(), n, lanes, diag, off)) <= 1e-14 * scale);
      CHECK(std::abs(ref.weighted_dot(w.data(), x.data(), y.data(), n, lanes) -
                     fast->weighted_dot(w.data(), x.data(), y.data(), n, lanes)) <= 1e-14 * scale);
      CHECK(std::abs(ref.dot(x.data(), y.data(), n * lanes) - fast->dot(x.data(), y.data(), n * lanes)) <=
            1e-14 * scale);
    }
  }
}

TEST_CASE("runtime selection") {
  CHECK(select("scalar"));
  CHECK(active().name == scalar_table().name);
  CHECK_FALSE(select("sse9"));
  if (avx2_table() != nullptr && cpu_has_avx2()) {
    CHECK(select("avx2"));
    CHECK(active().name == avx2_table()->name);
  }
  CHECK(select("auto"));
}
