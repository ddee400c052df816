#pragma once

// One cross-section mode of the coupled system. Projecting onto the
// Dirichlet eigenfunction e_j of omega turns the 3D operator into a 1D
// first-order system on the state (phi, v, psi, z) with the shift mu_j^2:
//
//   A_j (phi, v, psi, z) = (v, -L phi - b v - c z, z, -a L psi - d z + c v),
//   L = -d^2/dx^2 + mu_j^2  (centred differences, homogeneous Dirichlet).
//
// States are stored field-blocked: [phi | v | psi | z], N nodes each.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cylwave/banded_lu.hpp"
#include "cylwave/config.hpp"

namespace cylwave {

using cplx = std::complex<double>;

struct Grid1D {
  int N = 0;
  double h = 0.0;

  /// N interior nodes x_i = (i+1) h, h = 1/(N+1).
  static Grid1D uniform(int N);
  double node(int i) const { return (i + 1) * h; }
};

class ModalBlock {
 public:
  ModalBlock(const DampingConfig& config, Grid1D grid, double mu, std::size_t mode = 1,
             EnergyWeight weight = EnergyWeight::balanced, bool align_interfaces = false);

  std::size_t mode() const { return mode_; }
  double mu() const { return mu_; }
  double a() const { return a_; }
  const Grid1D& grid() const { return grid_; }
  int nodes() const { return grid_.N; }
  std::size_t dim() const { return 4 * static_cast<std::size_t>(grid_.N); }
  EnergyWeight weight() const { return weight_; }

  /// Multipliers of the h*L energy terms of phi and psi.
  double phi_weight() const { return weight_ == EnergyWeight::balanced ? 1.0 : a_; }
  double psi_weight() const { return weight_ == EnergyWeight::balanced ? a_ : 1.0; }

  std::span<const double> b() const { return b_; }
  std::span<const double> c() const { return c_; }
  std::span<const double> d() const { return d_; }

  /// Diagonal and off-diagonal of the tridiagonal L.
  double stencil_diag() const { return 2.0 / (grid_.h * grid_.h) + mu_ * mu_; }
  double stencil_off() const { return -1.0 / (grid_.h * grid_.h); }

  /// Smallest eigenvalue of the mu = 0 stencil, 4/h^2 sin^2(pi h / 2).
  double laplacian_floor() const;

  /// y = A_j x. T is double or cplx.
  template <class T>
  void apply(std::span<const T> x, std::span<T> y) const;

  /// Re <x, y>_W.
  template <class T>
  double inner(std::span<const T> x, std::span<const T> y) const;

  template <class T>
  double energy_norm2(std::span<const T> x) const {
    return inner<T>(x, x);
  }

  /// sum_i h (b_i |v_i|^2 + d_i |z_i|^2)
  template <class T>
  double damping_rate(std::span<const T> x) const;

  Eigen::MatrixXd dense_operator() const;
  Eigen::MatrixXd dense_stencil() const;

 private:
  std::size_t mode_;
  double mu_;
  double a_;
  Grid1D grid_;
  EnergyWeight weight_;
  std::vector<double> b_;
  std::vector<double> c_;
  std::vector<double> d_;
};

/// Dense energy Gram W with <x, x>_W = x^T W x.
Eigen::MatrixXd energy_gram(const ModalBlock& block);

/// max over random complex states of
/// |Re<A x, x>_W + sum h (b|v|^2 + d|z|^2)| / <x, x>_W.
double dissipativity_residual(const ModalBlock& block, int samples, std::uint64_t seed = 7);

/// Solves -A_j x = F through the reduced form v = -f1, z = -f3,
/// L phi = f2 + b f1 + c f3, a L psi = f4 + d f3 - c f1.
class StaticSolver {
 public:
  explicit StaticSolver(const ModalBlock& block);
  std::vector<double> solve(std::span<const double> forcing) const;

 private:
  const ModalBlock* block_;
  BandedLU<double> stencil_;
};

std::vector<double> solve_static(const ModalBlock& block, std::span<const double> forcing);

/// Factor G of the Gram, G^T G = W, built from the bidiagonal Cholesky
/// factor of L: G = diag(sqrt(wp h) R, sqrt(h) I, sqrt(wq h) R, sqrt(h) I).
class GramFactor {
 public:
  explicit GramFactor(const ModalBlock& block);

  void apply(std::span<const cplx> x, std::span<cplx> y) const;
  void apply_transpose(std::span<const cplx> x, std::span<cplx> y) const;
  void apply_inverse(std::span<const cplx> x, std::span<cplx> y) const;
  void apply_inverse_transpose(std::span<const cplx> x, std::span<cplx> y) const;

  Eigen::MatrixXd dense() const;

 private:
  int n_;
  double scale_phi_;
  double scale_psi_;
  double scale_l2_;
  std::vector<double> diag_;   // R(i,i)
  std::vector<double> upper_;  // R(i,i+1)
};

/// All retained modes j = 1..J on a shared grid. Blocks are immutable
/// once built and may be shared between workers.
class ModalSystem {
 public:
  ModalSystem(const DampingConfig& config, CrossSectionSpectrum spectrum, Grid1D grid,
              EnergyWeight weight = EnergyWeight::balanced, bool align_interfaces = false);

  static ModalSystem from_config(const ExperimentConfig& config);

  std::size_t modes() const { return blocks_.size(); }
  /// 0-based index; block(i).mode() == i + 1.
  const ModalBlock& block(std::size_t index) const { return blocks_.at(index); }
  const DampingConfig& config() const { return config_; }
  const CrossSectionSpectrum& spectrum() const { return spectrum_; }
  const Grid1D& grid() const { return grid_; }
  EnergyWeight weight() const { return weight_; }

 private:
  DampingConfig config_;
  CrossSectionSpectrum spectrum_;
  Grid1D grid_;
  EnergyWeight weight_;
  std::vector<ModalBlock> blocks_;
};

}  // namespace cylwave
