#include "cylwave/kernels.hpp"

namespace cylwave::kernels {

namespace {

void stencil_apply(const double* x, double* y, std::size_t n, std::size_t lanes, double diag, double off) {
  const std::size_t len = n * lanes;
  for (std::size_t k = 0; k < len; ++k) {
    const double left = k >= lanes ? x[k - lanes] : 0.0;
    const double right = k + lanes < len ? x[k + lanes] : 0.0;
    y[k] = diag * x[k] + off * (left + right);
  }
}

double stencil_bilinear(const double* x, const double* y, std::size_t n, std::size_t lanes, double diag,
                        double off) {
  const std::size_t len = n * lanes;
  double sum = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    const double left = k >= lanes ? x[k - lanes] : 0.0;
    const double right = k + lanes < len ? x[k + lanes] : 0.0;
    sum += y[k] * (diag * x[k] + off * (left + right));
  }
  return sum;
}

double weighted_dot(const double* w, const double* x, const double* y, std::size_t n, std::size_t lanes) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t l = 0; l < lanes; ++l) s += x[i * lanes + l] * y[i * lanes + l];
    sum += w[i] * s;
  }
  return sum;
}

double dot(const double* x, const double* y, std::size_t len) {
  double sum = 0.0;
  for (std::size_t k = 0; k < len; ++k) sum += x[k] * y[k];
  return sum;
}

constexpr KernelTable kScalar{"scalar", stencil_apply, stencil_bilinear, weighted_dot, dot};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace cylwave::kernels
