#pragma once

// Data-parallel inner loops shared by assembly, time stepping and the
// resolvent probes. Each kernel has a scalar reference implementation and
// an AVX2/FMA variant; the variant is picked once at runtime from CPUID and
// can be forced with CYLWAVE_SIMD=scalar|avx2.
//
// Arrays are node-major with `lanes` interleaved values per node (1 for real
// fields, 2 for std::complex<double> viewed as re/im pairs). The stencil is
// the 3-point Dirichlet stencil: neighbours outside [0, n) are zero.

#include <cstddef>
#include <string_view>

namespace cylwave::kernels {

struct KernelTable {
  std::string_view name;

  /// y[k] = diag*x[k] + off*(x[k-lanes] + x[k+lanes])
  void (*stencil_apply)(const double* x, double* y, std::size_t n, std::size_t lanes, double diag,
                        double off);

  /// sum_k y[k] * (diag*x[k] + off*(x[k-lanes] + x[k+lanes]))
  double (*stencil_bilinear)(const double* x, const double* y, std::size_t n, std::size_t lanes,
                             double diag, double off);

  /// sum_i w[i] * sum_l x[i*lanes+l] * y[i*lanes+l], lanes in {1, 2}
  double (*weighted_dot)(const double* w, const double* x, const double* y, std::size_t n,
                         std::size_t lanes);

  /// sum_k x[k] * y[k]
  double (*dot)(const double* x, const double* y, std::size_t len);
};

const KernelTable& scalar_table();

/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_table();

bool cpu_has_avx2();

/// Table used by the library.
const KernelTable& active();

/// Overrides the runtime choice ("scalar", "avx2", "auto"); returns false if
/// the request cannot be honoured on this machine.
bool select(std::string_view name);

}  // namespace cylwave::kernels
