#pragma once

// Dense reference computations used only by the tests. They rebuild the
// quantities from the assembled matrices with Eigen's general-purpose
// factorizations, sharing no code with the banded / Lanczos paths.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "cylwave/config.hpp"
#include "cylwave/modal_block.hpp"

namespace oracle {

using cylwave::cplx;

/// Upper Cholesky factor U of W, U^T U = W.
inline Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& W) {
  return Eigen::LLT<Eigen::MatrixXd>(W).matrixU();
}

/// Symmetric square root S of W, S S = W.
inline Eigen::MatrixXd symmetric_root(const Eigen::MatrixXd& W) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(W).operatorSqrt();
}

/// sigma_min of G (i lambda - A) G^{-1} by a dense SVD.
inline double sigma_min(const Eigen::MatrixXd& A, const Eigen::MatrixXd& G, double lambda) {
  const Eigen::Index n = A.rows();
  const Eigen::MatrixXcd Gc = G.cast<cplx>();
  const Eigen::MatrixXcd M = cplx(0.0, lambda) * Eigen::MatrixXcd::Identity(n, n) - A.cast<cplx>();
  const Eigen::MatrixXcd Ginv = G.inverse().cast<cplx>();
  const Eigen::MatrixXcd K = Gc * M * Ginv;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(K);
  return svd.singularValues()(n - 1);
}

inline double sigma_min(const cylwave::ModalBlock& block, double lambda) {
  return sigma_min(block.dense_operator(), cholesky_factor(cylwave::energy_gram(block)), lambda);
}

/// Eigenvalues of the N-node Dirichlet stencil -u'' on (0,1).
inline std::vector<double> dirichlet_eigenvalues(int N) {
  const double h = 1.0 / (N + 1);
  std::vector<double> out;
  for (int k = 1; k <= N; ++k) {
    const double s = std::sin(k * std::numbers::pi * h / 2.0);
    out.push_back(4.0 * s * s / (h * h));
  }
  return out;
}

struct Stacked {
  Eigen::MatrixXd A;
  Eigen::MatrixXd W;
  /// mu_j = sqrt of the eigenvalues of the M-node cross-section stencil.
  std::vector<double> mus;
};

/// Fully coupled finite-difference system on (0,1) x (0,1) with N axial and
/// M transverse interior nodes, fields ordered [phi | v | psi | z] and nodes
/// (m, i) -> m * N + i. No modal reduction is used.
inline Stacked stacked_system(const cylwave::DampingConfig& cfg, int N, int M,
                              cylwave::EnergyWeight weight = cylwave::EnergyWeight::balanced) {
  const double h = 1.0 / (N + 1);
  const double hy = 1.0 / (M + 1);
  auto stencil = [](int n, double step) {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      L(i, i) = 2.0 / (step * step);
      if (i > 0) L(i, i - 1) = -1.0 / (step * step);
      if (i + 1 < n) L(i, i + 1) = -1.0 / (step * step);
    }
    return L;
  };
  const Eigen::MatrixXd Lx = stencil(N, h);
  const Eigen::MatrixXd Ly = stencil(M, hy);
  const int n = N * M;
  Eigen::MatrixXd Lap = Eigen::MatrixXd::Zero(n, n);
  for (int m = 0; m < M; ++m) Lap.block(m * N, m * N, N, N) += Lx;
  for (int m = 0; m < M; ++m)
    for (int q = 0; q < M; ++q)
      if (Ly(m, q) != 0.0) Lap.block(m * N, q * N, N, N) += Ly(m, q) * Eigen::MatrixXd::Identity(N, N);

  Eigen::VectorXd b(n), c(n), d(n);
  for (int m = 0; m < M; ++m) {
    for (int i = 0; i < N; ++i) {
      const auto v = cylwave::damping_at(cfg, (i + 1) * h);
      b[m * N + i] = v.b;
      c[m * N + i] = v.c;
      d[m * N + i] = v.d;
    }
  }
  Stacked out;
  out.A = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  out.A.block(0, n, n, n).setIdentity();
  out.A.block(n, 0, n, n) = -Lap;
  out.A.block(2 * n, 3 * n, n, n).setIdentity();
  out.A.block(3 * n, 2 * n, n, n) = -cfg.a * Lap;
  for (int k = 0; k < n; ++k) {
    out.A(n + k, n + k) = -b[k];
    out.A(n + k, 3 * n + k) = -c[k];
    out.A(3 * n + k, n + k) = c[k];
    out.A(3 * n + k, 3 * n + k) = -d[k];
  }
  const double wp = weight == cylwave::EnergyWeight::balanced ? 1.0 : cfg.a;
  const double wq = weight == cylwave::EnergyWeight::balanced ? cfg.a : 1.0;
  const double cell = h * hy;
  out.W = Eigen::MatrixXd::Zero(4 * n, 4 * n);
  out.W.block(0, 0, n, n) = wp * cell * Lap;
  out.W.block(n, n, n, n) = cell * Eigen::MatrixXd::Identity(n, n);
  out.W.block(2 * n, 2 * n, n, n) = wq * cell * Lap;
  out.W.block(3 * n, 3 * n, n, n) = cell * Eigen::MatrixXd::Identity(n, n);

  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(Ly).eigenvalues();
  for (Eigen::Index j = 0; j < ev.size(); ++j) out.mus.push_back(std::sqrt(ev[j]));
  return out;
}

}  // namespace oracle
