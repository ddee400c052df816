#include "cylwave/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cylwave/format.hpp"
#include "cylwave/kernels.hpp"
#include "cylwave/parallel.hpp"

namespace cylwave {

bool ModalState::is_zero() const {
  for (const auto& m : modes)
    for (double v : m)
      if (v != 0.0) return false;
  return true;
}

InitialData initial_data(const ModalSystem& system, const InitSettings& recipe) {
  const auto& grid = system.grid();
  const auto n = static_cast<std::size_t>(grid.N);
  const std::size_t J = system.modes();
  InitialData out;
  out.state.N = grid.N;
  out.state.modes.assign(J, std::vector<double>(4 * n, 0.0));
  out.amplitudes.assign(J, 0.0);

  auto add_sine = [&](std::vector<double>& field, std::size_t offset, double coeff, int k) {
    for (std::size_t i = 0; i < n; ++i) {
      field[offset + i] += coeff * std::sin(k * std::numbers::pi * grid.node(static_cast<int>(i)));
    }
  };

  switch (recipe.recipe) {
    case InitRecipe::zero:
      out.description = "zero";
      break;
    case InitRecipe::single: {
      if (recipe.mode < 1 || recipe.mode > J) {
        throw Error(ErrorKind::validation, "initial data references mode " + std::to_string(recipe.mode) +
                                               " outside 1..J = " + std::to_string(J));
      }
      add_sine(out.state.modes[recipe.mode - 1], 0, recipe.amplitude, recipe.k);
      out.amplitudes[recipe.mode - 1] = recipe.amplitude;
      out.description = "single mode " + std::to_string(recipe.mode) + ", phi = " + format_g17(recipe.amplitude) +
                        " sin(" + std::to_string(recipe.k) + " pi x)";
      break;
    }
    case InitRecipe::smooth:
      for (std::size_t j = 0; j < J; ++j) {
        const double cj = recipe.amplitude * std::pow(static_cast<double>(j + 1), -recipe.s);
        out.amplitudes[j] = cj;
        for (int k = 1; k <= recipe.profiles; ++k) add_sine(out.state.modes[j], 0, cj * std::pow(k, -recipe.s), k);
      }
      out.description = "smooth, phi_j = " + format_g17(recipe.amplitude) + " j^-" + format_g17(recipe.s) +
                        " sum_{k<=" + std::to_string(recipe.profiles) + "} k^-s sin(k pi x)";
      break;
    case InitRecipe::random: {
      std::mt19937_64 rng(recipe.seed);
      std::uniform_real_distribution<double> unit(-1.0, 1.0);
      for (std::size_t j = 0; j < J; ++j) {
        const double cj = recipe.amplitude * std::pow(static_cast<double>(j + 1), -recipe.s);
        out.amplitudes[j] = cj;
        for (int k = 1; k <= recipe.profiles; ++k) {
          const double w = cj * std::pow(k, -recipe.s);
          add_sine(out.state.modes[j], 0, w * unit(rng), k);
          add_sine(out.state.modes[j], 2 * n, w * unit(rng), k);
        }
      }
      out.description = "random, seed " + std::to_string(recipe.seed) + ", decay j^-" + format_g17(recipe.s);
      break;
    }
  }
  return out;
}

double graph_norm2(const ModalSystem& system, const ModalState& state) {
  double total = 0.0;
  std::vector<double> ax;
  for (std::size_t j = 0; j < system.modes(); ++j) {
    const auto& blk = system.block(j);
    const auto& x = state.modes.at(j);
    ax.resize(x.size());
    blk.apply<double>(x, ax);
    total += blk.energy_norm2<double>(x) + blk.energy_norm2<double>(ax);
  }
  return total;
}

double total_energy(const ModalSystem& system, const ModalState& state) {
  double total = 0.0;
  for (std::size_t j = 0; j < system.modes(); ++j) total += 0.5 * system.block(j).energy_norm2<double>(state.modes.at(j));
  return total;
}

// ---------------------------------------------------------------------------

ModeStepper::ModeStepper(const ModalBlock& block, double dt)
    : block_(&block), dt_(dt), reduced_(2 * static_cast<std::size_t>(block.nodes()), 2, 2) {
  if (!(dt > 0.0)) throw Error(ErrorKind::validation, "time step must be positive");
  const auto n = static_cast<std::size_t>(block.nodes());
  const double s = dt / 2.0;
  const double a = block.a();
  const double ld = block.stencil_diag();
  const double lo = block.stencil_off();
  const auto b = block.b();
  const auto c = block.c();
  const auto d = block.d();
  // Unknowns interleaved per node: (v_i, z_i) -> (2i, 2i+1).
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t v = 2 * i;
    const std::size_t z = 2 * i + 1;
    reduced_.at(v, v) = 1.0 + s * b[i] + s * s * ld;
    reduced_.at(v, z) = s * c[i];
    reduced_.at(z, z) = 1.0 + s * d[i] + a * s * s * ld;
    reduced_.at(z, v) = -s * c[i];
    if (i > 0) {
      reduced_.at(v, v - 2) = s * s * lo;
      reduced_.at(z, z - 2) = a * s * s * lo;
    }
    if (i + 1 < n) {
      reduced_.at(v, v + 2) = s * s * lo;
      reduced_.at(z, z + 2) = a * s * s * lo;
    }
  }
  reduced_.factorize();
  mid_.resize(4 * n);
  work_.resize(n);
  rhs_.resize(2 * n);
}

double ModeStepper::step(std::span<double> x) {
  const auto& blk = *block_;
  const auto n = static_cast<std::size_t>(blk.nodes());
  if (x.size() != 4 * n) throw Error(ErrorKind::validation, "step: state has wrong length");
  const double s = dt_ / 2.0;
  const auto& k = kernels::active();
  const double* phi = x.data();
  const double* v = phi + n;
  const double* psi = v + n;
  const double* z = psi + n;

  // (I - s A) mid = x, eliminating phi and psi.
  k.stencil_apply(phi, work_.data(), n, 1, blk.stencil_diag(), blk.stencil_off());
  for (std::size_t i = 0; i < n; ++i) rhs_[2 * i] = v[i] - s * work_[i];
  k.stencil_apply(psi, work_.data(), n, 1, blk.stencil_diag(), blk.stencil_off());
  for (std::size_t i = 0; i < n; ++i) rhs_[2 * i + 1] = z[i] - s * blk.a() * work_[i];
  reduced_.solve(rhs_);

  double* m_phi = mid_.data();
  double* m_v = m_phi + n;
  double* m_psi = m_v + n;
  double* m_z = m_psi + n;
  for (std::size_t i = 0; i < n; ++i) {
    m_v[i] = rhs_[2 * i];
    m_z[i] = rhs_[2 * i + 1];
    m_phi[i] = phi[i] + s * m_v[i];
    m_psi[i] = psi[i] + s * m_z[i];
  }
  const double loss = dt_ * blk.damping_rate<double>(mid_);
  for (std::size_t i = 0; i < 4 * n; ++i) x[i] = 2.0 * mid_[i] - x[i];
  return loss;
}

double step(const ModalBlock& block, std::span<double> state, double dt) {
  ModeStepper stepper(block, dt);
  return stepper.step(state);
}

// ---------------------------------------------------------------------------

double EnergyTrace::max_balance_error() const {
  double worst = 0.0;
  const double e0 = initial_energy();
  for (std::size_t n = 0; n < energy.size(); ++n) worst = std::max(worst, std::abs(energy[n] + dissipated[n] - e0));
  return worst;
}

double default_time_step(const ModalSystem& system) {
  const double mu_max = system.spectrum().mus.back();
  return std::min(system.grid().h, 1.0 / (2.0 * mu_max));
}

EnergyTrace simulate(const ModalSystem& system, const ModalState& initial, double T, double dt,
                     const SimulationOptions& options) {
  if (!(T > 0.0)) throw Error(ErrorKind::validation, "simulate: T must be positive");
  if (!(dt > 0.0)) throw Error(ErrorKind::validation, "simulate: dt must be positive");
  if (options.sample_stride < 1) throw Error(ErrorKind::validation, "simulate: sample stride must be >= 1");
  const std::size_t J = system.modes();
  if (initial.modes.size() != J) throw Error(ErrorKind::validation, "simulate: state has wrong number of modes");

  const double ratio = T / dt;
  const double nearest = std::round(ratio);
  const auto steps = static_cast<std::size_t>(std::abs(ratio - nearest) <= 1e-9 * ratio ? nearest : std::ceil(ratio));
  const auto stride = static_cast<std::size_t>(options.sample_stride);

  std::vector<std::size_t> sample_steps;
  for (std::size_t n = 0; n <= steps; n += stride) sample_steps.push_back(n);
  if (sample_steps.back() != steps) sample_steps.push_back(steps);
  const std::size_t S = sample_steps.size();

  std::vector<std::vector<double>> mode_energy(J, std::vector<double>(S));
  std::vector<std::vector<double>> mode_loss(J, std::vector<double>(S));
  std::vector<double> mode_balance(J, 0.0);

  parallel_for(J, options.threads, [&](std::size_t j) {
    const auto& blk = system.block(j);
    std::vector<double> x = initial.modes[j];
    const double e0 = 0.5 * blk.energy_norm2<double>(x);
    mode_energy[j][0] = e0;
    mode_loss[j][0] = 0.0;
    if (e0 == 0.0) return;  // the flow of zero data is zero
    ModeStepper stepper(blk, dt);
    // Compensated sum keeps Q accurate over 1e4+ steps.
    double q = 0.0;
    double carry = 0.0;
    double worst = 0.0;
    std::size_t next = 1;
    for (std::size_t n = 1; n <= steps; ++n) {
      const double term = stepper.step(x) - carry;
      const double sum = q + term;
      carry = (sum - q) - term;
      q = sum;
      const double e = 0.5 * blk.energy_norm2<double>(x);
      worst = std::max(worst, std::abs(e + q - e0));
      if (next < S && sample_steps[next] == n) {
        mode_energy[j][next] = e;
        mode_loss[j][next] = q;
        ++next;
      }
    }
    mode_balance[j] = worst;
  });

  EnergyTrace trace;
  trace.dt = dt;
  trace.steps = steps;
  trace.graph_norm0 = graph_norm2(system, initial);
  trace.times.resize(S);
  trace.energy.assign(S, 0.0);
  trace.dissipated.assign(S, 0.0);
  for (std::size_t s = 0; s < S; ++s) {
    trace.times[s] = initial.t + static_cast<double>(sample_steps[s]) * dt;
    for (std::size_t j = 0; j < J; ++j) {
      trace.energy[s] += mode_energy[j][s];
      trace.dissipated[s] += mode_loss[j][s];
    }
  }
  for (double b : mode_balance) trace.balance_bound += b;
  trace.mode_energy = std::move(mode_energy);
  return trace;
}

void write_trace_csv(const EnergyTrace& trace, std::ostream& out, bool per_mode) {
  out << "t,E,Q";
  if (per_mode) {
    for (std::size_t j = 0; j < trace.mode_energy.size(); ++j) out << ",E_" << j + 1;
  }
  out << "\n";
  for (std::size_t s = 0; s < trace.times.size(); ++s) {
    out << format_sci17(trace.times[s]) << ',' << format_sci17(trace.energy[s]) << ','
        << format_sci17(trace.dissipated[s]);
    if (per_mode) {
      for (const auto& e : trace.mode_energy) out << ',' << format_sci17(e[s]);
    }
    out << "\n";
  }
}

}  // namespace cylwave
