// Compiled with -mavx2 -mfma; only reached after a CPUID check.

#include <immintrin.h>

#include "cylwave/kernels.hpp"

namespace cylwave::kernels {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double stencil_at(const double* x, std::size_t k, std::size_t len, std::size_t lanes, double diag,
                         double off) {
  const double left = k >= lanes ? x[k - lanes] : 0.0;
  const double right = k + lanes < len ? x[k + lanes] : 0.0;
  return diag * x[k] + off * (left + right);
}

void stencil_apply(const double* x, double* y, std::size_t n, std::size_t lanes, double diag, double off) {
  const std::size_t len = n * lanes;
  if (len < 2 * lanes + 4) {
    for (std::size_t k = 0; k < len; ++k) y[k] = stencil_at(x, k, len, lanes, diag, off);
    return;
  }
  for (std::size_t k = 0; k < lanes; ++k) y[k] = stencil_at(x, k, len, lanes, diag, off);
  const __m256d vd = _mm256_set1_pd(diag);
  const __m256d vo = _mm256_set1_pd(off);
  const std::size_t stop = len - lanes;
  std::size_t k = lanes;
  for (; k + 4 <= stop; k += 4) {
    const __m256d nb = _mm256_add_pd(_mm256_loadu_pd(x + k - lanes), _mm256_loadu_pd(x + k + lanes));
    const __m256d r = _mm256_fmadd_pd(vd, _mm256_loadu_pd(x + k), _mm256_mul_pd(vo, nb));
    _mm256_storeu_pd(y + k, r);
  }
  for (; k < len; ++k) y[k] = stencil_at(x, k, len, lanes, diag, off);
}

double stencil_bilinear(const double* x, const double* y, std::size_t n, std::size_t lanes, double diag,
                        double off) {
  const std::size_t len = n * lanes;
  if (len < 2 * lanes + 4) {
    double sum = 0.0;
    for (std::size_t k = 0; k < len; ++k) sum += y[k] * stencil_at(x, k, len, lanes, diag, off);
    return sum;
  }
  double tail = 0.0;
  for (std::size_t k = 0; k < lanes; ++k) tail += y[k] * stencil_at(x, k, len, lanes, diag, off);
  const __m256d vd = _mm256_set1_pd(diag);
  const __m256d vo = _mm256_set1_pd(off);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  const std::size_t stop = len - lanes;
  std::size_t k = lanes;
  for (; k + 8 <= stop; k += 8) {
    const __m256d nb0 = _mm256_add_pd(_mm256_loadu_pd(x + k - lanes), _mm256_loadu_pd(x + k + lanes));
    const __m256d nb1 = _mm256_add_pd(_mm256_loadu_pd(x + k + 4 - lanes), _mm256_loadu_pd(x + k + 4 + lanes));
    const __m256d s0 = _mm256_fmadd_pd(vd, _mm256_loadu_pd(x + k), _mm256_mul_pd(vo, nb0));
    const __m256d s1 = _mm256_fmadd_pd(vd, _mm256_loadu_pd(x + k + 4), _mm256_mul_pd(vo, nb1));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(y + k), s0, acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(y + k + 4), s1, acc1);
  }
  for (; k + 4 <= stop; k += 4) {
    const __m256d nb = _mm256_add_pd(_mm256_loadu_pd(x + k - lanes), _mm256_loadu_pd(x + k + lanes));
    const __m256d s = _mm256_fmadd_pd(vd, _mm256_loadu_pd(x + k), _mm256_mul_pd(vo, nb));
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(y + k), s, acc0);
  }
  for (; k < len; ++k) tail += y[k] * stencil_at(x, k, len, lanes, diag, off);
  return hsum(_mm256_add_pd(acc0, acc1)) + tail;
}

double weighted_dot(const double* w, const double* x, const double* y, std::size_t n, std::size_t lanes) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  if (lanes == 1) {
    for (; i + 4 <= n; i += 4) {
      const __m256d xy = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), xy, acc);
    }
  } else if (lanes == 2) {
    for (; i + 2 <= n; i += 2) {
      const __m256d wd = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(w + i)), 0x50);
      const __m256d xy = _mm256_mul_pd(_mm256_loadu_pd(x + 2 * i), _mm256_loadu_pd(y + 2 * i));
      acc = _mm256_fmadd_pd(wd, xy, acc);
    }
  }
  double sum = hsum(acc);
  for (; i < n; ++i) {
    double s = 0.0;
    for (std::size_t l = 0; l < lanes; ++l) s += x[i * lanes + l] * y[i * lanes + l];
    sum += w[i] * s;
  }
  return sum;
}

double dot(const double* x, const double* y, std::size_t len) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= len; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k + 4), _mm256_loadu_pd(y + k + 4), acc1);
  }
  for (; k + 4 <= len; k += 4) acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k), acc0);
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < len; ++k) sum += x[k] * y[k];
  return sum;
}

constexpr KernelTable kAvx2{"avx2", stencil_apply, stencil_bilinear, weighted_dot, dot};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2; }

}  // namespace cylwave::kernels
