#pragma once

// Frequency-domain probes of the modal system: dense block spectra, the
// energy-norm resolvent ||(i lambda - A)^{-1}|| along the imaginary axis,
// envelope growth fits and the localized dissipation identity
//
//   sum h (b |v|^2 + d |z|^2) = Re <(i lambda - A) Phi, Phi>_W.
//
// The resolvent of the block-diagonal system is the max of the per-mode
// resolvents, so every probe works one mode at a time.

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "cylwave/banded_lu.hpp"
#include "cylwave/config.hpp"
#include "cylwave/modal_block.hpp"

namespace cylwave {

/// Factorized i lambda - A_j. Both solves eliminate (v, z) and work on the
/// pentadiagonal (phi_i, psi_i) system
///
///   [ L - lambda^2 + i lambda B      i lambda C            ]
///   [ -i lambda C                    a L - lambda^2 + i lambda D ].
class ShiftedBlockSolver {
 public:
  /// Throws Error(numerical) when the shift is an eigenvalue.
  ShiftedBlockSolver(const ModalBlock& block, double lambda);

  const ModalBlock& block() const { return *block_; }
  double lambda() const { return lambda_; }

  /// x = (i lambda - A)^{-1} f
  void solve(std::span<const cplx> f, std::span<cplx> x) const;
  /// y = (i lambda - A)^{-H} g (Euclidean adjoint)
  void solve_adjoint(std::span<const cplx> g, std::span<cplx> y) const;

 private:
  const ModalBlock* block_;
  double lambda_;
  BandedLU<cplx> reduced_;
  mutable std::vector<cplx> rhs_;
};

struct SingularEstimate {
  double sigma = 0.0;        // sigma_min,W(i lambda - A_j)
  double residual = 0.0;     // relative Ritz residual at exit
  int iterations = 0;        // operator applications
  std::vector<cplx> forcing; // unit-W forcing attaining 1/sigma (if requested)
};

struct LanczosOptions {
  double tolerance = 1e-12;
  int cycle_length = 48;
  int max_restarts = 40;
};

/// Smallest singular value of G (i lambda - A) G^{-1}, G^T G = W, as
/// theta^{-1/2} where theta is the top eigenvalue of the Hermitian operator
/// G^{-T} (i lambda - A)^{-H} W (i lambda - A)^{-1} G^{-1}. Lanczos with full
/// reorthogonalization and explicit restarts from the Ritz vector.
SingularEstimate smallest_singular_value(const ShiftedBlockSolver& solver, const GramFactor& gram,
                                         const LanczosOptions& options = {}, bool want_forcing = false);

/// All eigenvalues of A_j from a dense eigensolve; 4N must not exceed cap.
std::vector<cplx> modal_spectrum(const ModalBlock& block, std::size_t dense_cap = 4096);

/// mu_cut = 2 |lambda| / sqrt(min(1, a)). Modes with mu <= mu_cut / 2 can
/// resonate with lambda and are always solved; every other mode is solved
/// only when certified_sigma_bound cannot rule it out of the max.
double mode_cutoff(double lambda, double a);

/// Certified lower bound on sigma_min,W(i lambda - A_j) for the balanced
/// energy weight: spectral distance of the W-skew undamped part minus the
/// W-norm of the damping/coupling perturbation. May be <= 0 (no bound).
double certified_sigma_bound(const ModalBlock& block, double lambda);

struct ModeSigma {
  std::size_t mode = 0;  // 1-based
  double sigma = 0.0;
  bool bounded = false;  // true: sigma is the certified bound, not a solve
};

struct ResolventSample {
  double lambda = 0.0;
  std::vector<ModeSigma> sigma_min_per_mode;
  double norm = 0.0;
  std::size_t argmax_mode = 0;
  double sigma_min = 0.0;
  bool singular = false;
  std::size_t solved_modes = 0;
  /// Worst unit forcing of the argmax mode (only when requested).
  std::vector<cplx> worst_forcing;
};

struct ProbeOptions {
  LanczosOptions lanczos;
  /// Solve every mode instead of using certified bounds.
  bool all_modes = false;
  bool want_forcing = false;
  unsigned threads = 1;
};

ResolventSample resolvent_norm(const ModalSystem& system, double lambda, const ProbeOptions& options = {});

/// Log-spaced base grid plus 9-point clusters around the undamped modal
/// frequencies sqrt(k^2 pi^2 + mu_j^2) and sqrt(a) sqrt(k^2 pi^2 + mu_j^2),
/// k = 1..refine_k, that fall inside the range. Sorted, duplicates removed.
std::vector<double> resolvent_grid(const ResolventSettings& settings, const CrossSectionSpectrum& spectrum,
                                   double a);

struct ResolventSweep {
  std::vector<ResolventSample> samples;
  /// Running maxima of the norm in grid order.
  std::vector<double> envelope;
};

/// Samples in grid order (the grid must be sorted). Parallel over lambda.
ResolventSweep resolvent_sweep(const ModalSystem& system, std::span<const double> grid,
                               const ProbeOptions& options = {});

/// Sweep made of exact norm = lambda^p samples (CLI plumbing oracle).
ResolventSweep synthetic_sweep(std::span<const double> grid, double power);

struct GrowthFit {
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  double exponent = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
  std::size_t samples = 0;
  bool envelope = true;
};

/// Least-squares slope of log(envelope) against log(lambda) over samples
/// with lambda in [lo, hi]; the envelope restarts at lo. Needs >= 8 samples.
GrowthFit growth_exponent(const ResolventSweep& sweep, double lo = 0.0,
                          double hi = std::numeric_limits<double>::infinity());

struct ResolventDiagnostics {
  double lambda = 0.0;
  std::size_t mode = 0;
  double sigma_min = 0.0;
  double damped_v = 0.0;       // sum ||sqrt(b) v_j||^2
  double damped_z = 0.0;       // sum ||sqrt(d) z_j||^2
  double damped_phi = 0.0;     // sum ||lambda sqrt(b) phi_j||^2
  double damped_psi = 0.0;     // sum ||lambda sqrt(d) psi_j||^2
  double forcing_pairing = 0.0;  // Re <F, Phi>_W
  double solution_norm2 = 0.0;   // ||Phi||_W^2
  double identity_residual = 0.0;
};

/// Solves with the worst unit forcing and evaluates the localized norms.
/// The identity residual is |lhs - rhs| / max(lhs, |rhs|), or relative to
/// ||F||_W ||Phi||_W when both sides are below 1e-13 of it.
ResolventDiagnostics resolvent_diagnostics(const ModalSystem& system, double lambda,
                                           const ProbeOptions& options = {});

/// Columns lambda, norm, argmax_mode, sigma_min; 17 significant digits.
void write_sweep_csv(const ResolventSweep& sweep, std::ostream& out);

}  // namespace cylwave
