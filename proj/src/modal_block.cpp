#include "cylwave/modal_block.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <utility>

#include "cylwave/kernels.hpp"

namespace cylwave {

namespace {

template <class T>
constexpr std::size_t lanes_of() {
  return sizeof(T) / sizeof(double);
}

template <class T>
const double* raw(std::span<const T> s) {
  return reinterpret_cast<const double*>(s.data());
}

template <class T>
double* raw(std::span<T> s) {
  return reinterpret_cast<double*>(s.data());
}

double snap_to_midpoint(double alpha, double h) {
  const double m = std::round(alpha / h - 0.5);
  return std::clamp((m + 0.5) * h, 0.0, 1.0);
}

}  // namespace

Grid1D Grid1D::uniform(int N) {
  if (N < 2) throw Error(ErrorKind::validation, "grid needs N >= 2 interior nodes");
  return Grid1D{N, 1.0 / (N + 1)};
}

ModalBlock::ModalBlock(const DampingConfig& config, Grid1D grid, double mu, std::size_t mode,
                       EnergyWeight weight, bool align_interfaces)
    : mode_(mode), mu_(mu), a_(config.a), grid_(grid), weight_(weight) {
  if (!(mu > 0.0)) throw Error(ErrorKind::domain, "modal block needs mu > 0");
  if (grid.N < 2) throw Error(ErrorKind::validation, "grid needs N >= 2 interior nodes");
  DampingConfig sampled = config;
  if (align_interfaces) {
    for (auto& al : sampled.alphas) al = snap_to_midpoint(al, grid.h);
  }
  const auto n = static_cast<std::size_t>(grid.N);
  b_.resize(n);
  c_.resize(n);
  d_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = damping_at(sampled, grid.node(static_cast<int>(i)));
    b_[i] = v.b;
    c_[i] = v.c;
    d_[i] = v.d;
  }
}

double ModalBlock::laplacian_floor() const {
  const double s = std::sin(std::numbers::pi * grid_.h / 2.0);
  return 4.0 * s * s / (grid_.h * grid_.h);
}

template <class T>
void ModalBlock::apply(std::span<const T> x, std::span<T> y) const {
  const auto n = static_cast<std::size_t>(grid_.N);
  if (x.size() != 4 * n || y.size() != 4 * n) throw Error(ErrorKind::validation, "apply: state has wrong length");
  const auto& k = kernels::active();
  constexpr auto lanes = lanes_of<T>();
  const T* phi = x.data();
  const T* v = phi + n;
  const T* psi = v + n;
  const T* z = psi + n;
  T* y_phi = y.data();
  T* y_v = y_phi + n;
  T* y_psi = y_v + n;
  T* y_z = y_psi + n;

  k.stencil_apply(reinterpret_cast<const double*>(phi), reinterpret_cast<double*>(y_v), n, lanes,
                  -stencil_diag(), -stencil_off());
  k.stencil_apply(reinterpret_cast<const double*>(psi), reinterpret_cast<double*>(y_z), n, lanes,
                  -a_ * stencil_diag(), -a_ * stencil_off());
  for (std::size_t i = 0; i < n; ++i) {
    y_v[i] -= b_[i] * v[i] + c_[i] * z[i];
    y_z[i] += c_[i] * v[i] - d_[i] * z[i];
    y_phi[i] = v[i];
    y_psi[i] = z[i];
  }
}

template <class T>
double ModalBlock::inner(std::span<const T> x, std::span<const T> y) const {
  const auto n = static_cast<std::size_t>(grid_.N);
  if (x.size() != 4 * n || y.size() != 4 * n) throw Error(ErrorKind::validation, "inner: state has wrong length");
  const auto& k = kernels::active();
  constexpr auto lanes = lanes_of<T>();
  const double* xs = raw(x);
  const double* ys = raw(y);
  const std::size_t f = n * lanes;
  const double grad_phi = k.stencil_bilinear(xs, ys, n, lanes, stencil_diag(), stencil_off());
  const double vel = k.dot(xs + f, ys + f, f);
  const double grad_psi = k.stencil_bilinear(xs + 2 * f, ys + 2 * f, n, lanes, stencil_diag(), stencil_off());
  const double acc = k.dot(xs + 3 * f, ys + 3 * f, f);
  return grid_.h * (phi_weight() * grad_phi + vel + psi_weight() * grad_psi + acc);
}

template <class T>
double ModalBlock::damping_rate(std::span<const T> x) const {
  const auto n = static_cast<std::size_t>(grid_.N);
  if (x.size() != 4 * n) throw Error(ErrorKind::validation, "damping_rate: state has wrong length");
  const auto& k = kernels::active();
  constexpr auto lanes = lanes_of<T>();
  const double* xs = raw(x);
  const std::size_t f = n * lanes;
  return grid_.h * (k.weighted_dot(b_.data(), xs + f, xs + f, n, lanes) +
                    k.weighted_dot(d_.data(), xs + 3 * f, xs + 3 * f, n, lanes));
}

template void ModalBlock::apply<double>(std::span<const double>, std::span<double>) const;
template void ModalBlock::apply<cplx>(std::span<const cplx>, std::span<cplx>) const;
template double ModalBlock::inner<double>(std::span<const double>, std::span<const double>) const;
template double ModalBlock::inner<cplx>(std::span<const cplx>, std::span<const cplx>) const;
template double ModalBlock::damping_rate<double>(std::span<const double>) const;
template double ModalBlock::damping_rate<cplx>(std::span<const cplx>) const;

Eigen::MatrixXd ModalBlock::dense_stencil() const {
  const int n = grid_.N;
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    L(i, i) = stencil_diag();
    if (i > 0) L(i, i - 1) = stencil_off();
    if (i + 1 < n) L(i, i + 1) = stencil_off();
  }
  return L;
}

Eigen::MatrixXd ModalBlock::dense_operator() const {
  const int n = grid_.N;
  const Eigen::MatrixXd L = dense_stencil();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  A.block(0, n, n, n).setIdentity();
  A.block(n, 0, n, n) = -L;
  A.block(2 * n, 3 * n, n, n).setIdentity();
  A.block(3 * n, 2 * n, n, n) = -a_ * L;
  for (int i = 0; i < n; ++i) {
    A(n + i, n + i) = -b_[i];
    A(n + i, 3 * n + i) = -c_[i];
    A(3 * n + i, n + i) = c_[i];
    A(3 * n + i, 3 * n + i) = -d_[i];
  }
  return A;
}

Eigen::MatrixXd energy_gram(const ModalBlock& block) {
  const int n = block.nodes();
  const double h = block.grid().h;
  const Eigen::MatrixXd L = block.dense_stencil();
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  W.block(0, 0, n, n) = block.phi_weight() * h * L;
  W.block(n, n, n, n) = h * Eigen::MatrixXd::Identity(n, n);
  W.block(2 * n, 2 * n, n, n) = block.psi_weight() * h * L;
  W.block(3 * n, 3 * n, n, n) = h * Eigen::MatrixXd::Identity(n, n);
  return W;
}

double dissipativity_residual(const ModalBlock& block, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<cplx> x(block.dim());
  std::vector<cplx> ax(block.dim());
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    for (auto& e : x) e = {gauss(rng), gauss(rng)};
    block.apply<cplx>(x, ax);
    const double form = block.inner<cplx>(ax, x);
    const double norm2 = block.energy_norm2<cplx>(x);
    worst = std::max(worst, std::abs(form + block.damping_rate<cplx>(x)) / norm2);
  }
  return worst;
}

// ---------------------------------------------------------------------------

StaticSolver::StaticSolver(const ModalBlock& block)
    : block_(&block), stencil_(static_cast<std::size_t>(block.nodes()), 1, 1) {
  const auto n = static_cast<std::size_t>(block.nodes());
  for (std::size_t i = 0; i < n; ++i) {
    stencil_.at(i, i) = block.stencil_diag();
    if (i > 0) stencil_.at(i, i - 1) = block.stencil_off();
    if (i + 1 < n) stencil_.at(i, i + 1) = block.stencil_off();
  }
  stencil_.factorize();
}

std::vector<double> StaticSolver::solve(std::span<const double> f) const {
  const auto& blk = *block_;
  const auto n = static_cast<std::size_t>(blk.nodes());
  if (f.size() != 4 * n) throw Error(ErrorKind::validation, "solve_static: forcing has wrong length");
  const auto f1 = f.subspan(0, n);
  const auto f2 = f.subspan(n, n);
  const auto f3 = f.subspan(2 * n, n);
  const auto f4 = f.subspan(3 * n, n);
  const auto b = blk.b();
  const auto c = blk.c();
  const auto d = blk.d();

  std::vector<double> x(4 * n);
  std::span<double> phi(x.data(), n);
  std::span<double> v(x.data() + n, n);
  std::span<double> psi(x.data() + 2 * n, n);
  std::span<double> z(x.data() + 3 * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = -f1[i];
    z[i] = -f3[i];
    phi[i] = f2[i] + b[i] * f1[i] + c[i] * f3[i];
    psi[i] = (f4[i] + d[i] * f3[i] - c[i] * f1[i]) / blk.a();
  }
  stencil_.solve(phi);
  stencil_.solve(psi);
  return x;
}

std::vector<double> solve_static(const ModalBlock& block, std::span<const double> forcing) {
  return StaticSolver(block).solve(forcing);
}

// ---------------------------------------------------------------------------

GramFactor::GramFactor(const ModalBlock& block)
    : n_(block.nodes()),
      scale_phi_(std::sqrt(block.phi_weight() * block.grid().h)),
      scale_psi_(std::sqrt(block.psi_weight() * block.grid().h)),
      scale_l2_(std::sqrt(block.grid().h)),
      diag_(static_cast<std::size_t>(block.nodes())),
      upper_(static_cast<std::size_t>(block.nodes()), 0.0) {
  const double dg = block.stencil_diag();
  const double off = block.stencil_off();
  double prev = 0.0;
  for (int i = 0; i < n_; ++i) {
    const double piv = dg - prev * prev;
    if (!(piv > 0.0)) throw Error(ErrorKind::numerical, "Gram factor: stencil is not positive definite");
    diag_[static_cast<std::size_t>(i)] = std::sqrt(piv);
    if (i + 1 < n_) {
      upper_[static_cast<std::size_t>(i)] = off / diag_[static_cast<std::size_t>(i)];
      prev = upper_[static_cast<std::size_t>(i)];
    }
  }
}

void GramFactor::apply(std::span<const cplx> x, std::span<cplx> y) const {
  const auto n = static_cast<std::size_t>(n_);
  for (std::size_t f = 0; f < 4; ++f) {
    const cplx* in = x.data() + f * n;
    cplx* out = y.data() + f * n;
    if (f == 0 || f == 2) {
      const double s = f == 0 ? scale_phi_ : scale_psi_;
      for (std::size_t i = 0; i < n; ++i) {
        cplx r = diag_[i] * in[i];
        if (i + 1 < n) r += upper_[i] * in[i + 1];
        out[i] = s * r;
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) out[i] = scale_l2_ * in[i];
    }
  }
}

void GramFactor::apply_transpose(std::span<const cplx> x, std::span<cplx> y) const {
  const auto n = static_cast<std::size_t>(n_);
  for (std::size_t f = 0; f < 4; ++f) {
    const cplx* in = x.data() + f * n;
    cplx* out = y.data() + f * n;
    if (f == 0 || f == 2) {
      const double s = f == 0 ? scale_phi_ : scale_psi_;
      for (std::size_t i = 0; i < n; ++i) {
        cplx r = diag_[i] * in[i];
        if (i > 0) r += upper_[i - 1] * in[i - 1];
        out[i] = s * r;
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) out[i] = scale_l2_ * in[i];
    }
  }
}

void GramFactor::apply_inverse(std::span<const cplx> x, std::span<cplx> y) const {
  const auto n = static_cast<std::size_t>(n_);
  for (std::size_t f = 0; f < 4; ++f) {
    const cplx* in = x.data() + f * n;
    cplx* out = y.data() + f * n;
    if (f == 0 || f == 2) {
      const double s = f == 0 ? scale_phi_ : scale_psi_;
      for (std::size_t ii = n; ii-- > 0;) {
        cplx r = in[ii] / s;
        if (ii + 1 < n) r -= upper_[ii] * out[ii + 1];
        out[ii] = r / diag_[ii];
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) out[i] = in[i] / scale_l2_;
    }
  }
}

void GramFactor::apply_inverse_transpose(std::span<const cplx> x, std::span<cplx> y) const {
  const auto n = static_cast<std::size_t>(n_);
  for (std::size_t f = 0; f < 4; ++f) {
    const cplx* in = x.data() + f * n;
    cplx* out = y.data() + f * n;
    if (f == 0 || f == 2) {
      const double s = f == 0 ? scale_phi_ : scale_psi_;
      for (std::size_t i = 0; i < n; ++i) {
        cplx r = in[i] / s;
        if (i > 0) r -= upper_[i - 1] * out[i - 1];
        out[i] = r / diag_[i];
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) out[i] = in[i] / scale_l2_;
    }
  }
}

Eigen::MatrixXd GramFactor::dense() const {
  const int n = n_;
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  for (int i = 0; i < n; ++i) {
    G(i, i) = scale_phi_ * diag_[static_cast<std::size_t>(i)];
    G(2 * n + i, 2 * n + i) = scale_psi_ * diag_[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      G(i, i + 1) = scale_phi_ * upper_[static_cast<std::size_t>(i)];
      G(2 * n + i, 2 * n + i + 1) = scale_psi_ * upper_[static_cast<std::size_t>(i)];
    }
    G(n + i, n + i) = scale_l2_;
    G(3 * n + i, 3 * n + i) = scale_l2_;
  }
  return G;
}

// ---------------------------------------------------------------------------

ModalSystem::ModalSystem(const DampingConfig& config, CrossSectionSpectrum spectrum, Grid1D grid,
                         EnergyWeight weight, bool align_interfaces)
    : config_(config), spectrum_(std::move(spectrum)), grid_(grid), weight_(weight) {
  blocks_.reserve(spectrum_.size());
  for (std::size_t j = 0; j < spectrum_.size(); ++j) {
    blocks_.emplace_back(config_, grid_, spectrum_.mus[j], j + 1, weight_, align_interfaces);
  }
}

ModalSystem ModalSystem::from_config(const ExperimentConfig& config) {
  return ModalSystem(config.damping, config.spectrum(), Grid1D::uniform(config.numerics.N),
                     config.numerics.energy_weight, config.numerics.align_interfaces);
}

}  // namespace cylwave
