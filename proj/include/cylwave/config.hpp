#pragma once

// Physical configuration of the coupled damped wave system on a cylinder
// (0,1) x omega: wave-speed ratio, damping/coupling layout along the axis,
// and the Dirichlet spectrum of the cross-section omega.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cylwave/error.hpp"

namespace cylwave {

enum class DampingCase { lcd1, lcd2 };

std::string_view to_string(DampingCase c);

/// Piecewise-constant function on [0,1]: values[k] holds on
/// [starts[k], starts[k+1]) and the last value extends to 1.
struct StepProfile {
  std::vector<double> starts;
  std::vector<double> values;

  double at(double x) const;
  /// Parses "x0:v0, x1:v1, ..." (x0 must be 0, starts increasing).
  static StepProfile parse(std::string_view text);
  std::string to_string() const;
};

struct DampingConfig {
  double a = 1.0;
  std::array<double, 4> alphas{0.2, 0.4, 0.6, 0.8};
  double b0 = 1.0;
  double c0 = 1.0;
  double d0 = 0.0;
  DampingCase damping_case = DampingCase::lcd1;
  /// +1 or -1; the coupling plateau is coupling_sign * c0.
  double coupling_sign = 1.0;
  /// Switches off b, c, d entirely (conservative reference system).
  bool undamped = false;
  std::optional<StepProfile> b_table;
  std::optional<StepProfile> c_table;
  std::optional<StepProfile> d_table;
};

struct DampingValues {
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

/// Throws Error on any violated ordering, sign or case constraint.
void validate(const DampingConfig& config);

/// Profile values at x in [0,1]; plateaus use the half-open convention
/// [alpha_i, alpha_k).
DampingValues damping_at(const DampingConfig& config, double x);

enum class CrossSection { interval, square, user_file };

std::string_view to_string(CrossSection s);

struct CrossSectionSpectrum {
  CrossSection source = CrossSection::interval;
  /// Square roots mu_j of the Dirichlet eigenvalues of omega, nondecreasing.
  std::vector<double> mus;

  std::size_t size() const { return mus.size(); }
};

/// First J cross-section frequencies: j*pi for the unit interval, sorted
/// pi*sqrt(p^2+q^2) for the unit square.
CrossSectionSpectrum cross_section_eigenvalues(CrossSection source, std::size_t count);

/// Validates user supplied frequencies (positive, nondecreasing).
CrossSectionSpectrum cross_section_from_values(std::vector<double> mus);

/// Reads whitespace separated frequencies, keeps the first `count` (all if 0).
CrossSectionSpectrum cross_section_from_file(const std::string& path, std::size_t count);

struct RatePrediction {
  int ell = 2;
  double kappa = 1.0;
};

enum class EnergyWeight {
  balanced,  // a multiplies the psi-gradient term; the dissipation law is exact
  literal,   // a multiplies the phi-gradient term
};

enum class InitRecipe { zero, smooth, single, random };

struct InitSettings {
  InitRecipe recipe = InitRecipe::smooth;
  double s = 3.0;           // modal amplitude decay j^{-s}
  double amplitude = 1.0;
  std::size_t mode = 1;     // single: mode index (1-based)
  int k = 1;                // single: axial wavenumber
  int profiles = 4;         // smooth/random: number of axial sines
  std::uint64_t seed = 1;
};

struct NumericsSettings {
  int N = 64;
  std::optional<double> dt;
  double T = 100.0;
  int sample_stride = 10;
  EnergyWeight energy_weight = EnergyWeight::balanced;
  /// Snap plateau edges to cell midpoints between nodes.
  bool align_interfaces = false;
};

struct ResolventSettings {
  double lambda_min = 10.0;
  double lambda_max = 200.0;
  int points = 64;
  int refine_k = 1;                // axial wavenumbers used for resonance refinement
  double refine_halfwidth = 0.01;  // relative half-width of each refinement cluster
  double tolerance = 1e-12;        // Lanczos residual tolerance (relative)
  std::size_t dense_cap = 4096;
};

struct FitSettings {
  std::optional<double> t0;
  std::optional<double> t1;
};

struct ExperimentConfig {
  DampingConfig damping;
  CrossSection cross_section = CrossSection::interval;
  std::size_t J = 8;
  std::string cross_section_file;
  NumericsSettings numerics;
  InitSettings init;
  ResolventSettings resolvent;
  FitSettings fit;

  CrossSectionSpectrum spectrum() const;
};

/// Parses a key/value document with optional [section] headers and dotted
/// keys. Unknown keys are rejected. The result is validated.
ExperimentConfig load_config(std::string_view text);
ExperimentConfig load_config_file(const std::string& path);

/// Applies one "key = value" assignment without validating the whole config.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

void validate(const ExperimentConfig& config);

/// Canonical text form; load_config(to_config_text(c)) reproduces c.
std::string to_config_text(const ExperimentConfig& config);

/// Named layouts: fig1_left, fig1_right, fig2, fig3, undamped.
ExperimentConfig preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace cylwave
