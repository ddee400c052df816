#pragma once

// Time integration of the modal system with the implicit midpoint rule.
// Because the rule is a Cayley transform of A_j, the discrete energy obeys
//
//   E_j^{n+1} - E_j^n = -dt * sum_i h (b_i |v_i^{n+1/2}|^2 + d_i |z_i^{n+1/2}|^2)
//
// exactly, with E_j = 1/2 <Phi_j, Phi_j>_W. Modes never interact, so every
// mode is advanced independently and the trace is a reduction over modes.

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cylwave/banded_lu.hpp"
#include "cylwave/config.hpp"
#include "cylwave/modal_block.hpp"

namespace cylwave {

struct ModalState {
  double t = 0.0;
  int N = 0;
  /// modes[j] = [phi | v | psi | z] of mode j+1, 4N entries.
  std::vector<std::vector<double>> modes;

  bool is_zero() const;
};

struct InitialData {
  ModalState state;
  /// Leading modal amplitude of each mode (provenance and tail estimates).
  std::vector<double> amplitudes;
  std::string description;
};

InitialData initial_data(const ModalSystem& system, const InitSettings& recipe);

/// sum_j (||Phi_j||_W^2 + ||A_j Phi_j||_W^2)
double graph_norm2(const ModalSystem& system, const ModalState& state);

/// 1/2 ||Phi_j||_W^2 summed over modes.
double total_energy(const ModalSystem& system, const ModalState& state);

/// One implicit-midpoint integrator for a single mode. The reduced (v, z)
/// system is factorized once at construction.
class ModeStepper {
 public:
  ModeStepper(const ModalBlock& block, double dt);

  /// Advances the state in place by dt and returns the dissipated energy
  /// dt * sum_i h (b |v_mid|^2 + d |z_mid|^2).
  double step(std::span<double> state);

  double dt() const { return dt_; }

 private:
  const ModalBlock* block_;
  double dt_;
  BandedLU<double> reduced_;
  std::vector<double> mid_;
  std::vector<double> work_;
  std::vector<double> rhs_;
};

/// Single step convenience wrapper (factorizes on every call).
double step(const ModalBlock& block, std::span<double> state, double dt);

struct EnergyTrace {
  std::vector<double> times;
  std::vector<double> energy;
  std::vector<double> dissipated;  // cumulative Q(t_n)
  std::vector<std::vector<double>> mode_energy;  // [j][sample]
  double graph_norm0 = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;
  /// sum_j max_n |E_j(t_n) + Q_j(t_n) - E_j(0)| over every step (not only
  /// the recorded samples); bounds max_n |E + Q - E(0)|.
  double balance_bound = 0.0;

  double initial_energy() const { return energy.empty() ? 0.0 : energy.front(); }
  /// max over recorded samples of |E + Q - E(0)|.
  double max_balance_error() const;
};

struct SimulationOptions {
  int sample_stride = 1;
  unsigned threads = 1;
};

/// min(h, 1 / (2 mu_J))
double default_time_step(const ModalSystem& system);

EnergyTrace simulate(const ModalSystem& system, const ModalState& initial, double T, double dt,
                     const SimulationOptions& options = {});

/// Columns t, E, Q and optionally E_1..E_J; 17 significant digits.
void write_trace_csv(const EnergyTrace& trace, std::ostream& out, bool per_mode);

}  // namespace cylwave
