#pragma once

// Decay-rate bookkeeping: predicted exponents per damping case, log-log
// fits of energy traces, and plain-text experiment reports with a flat
// key/value companion.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cylwave/config.hpp"
#include "cylwave/evolution.hpp"
#include "cylwave/spectral.hpp"

namespace cylwave {

/// Fit thresholds: observed kappa >= kDecayFraction * predicted kappa, and
/// envelope slope <= ell + kGrowthSlack.
inline constexpr double kDecayFraction = 0.9;
inline constexpr double kGrowthSlack = 0.3;

/// LCD1: ell = 4 (a = 1) or 6 (a != 1); LCD2: ell = 2. kappa = 2 / ell.
RatePrediction predicted_rate(const DampingConfig& config);

struct DecayFit {
  double t0 = 0.0;
  double t1 = 0.0;
  double kappa = 0.0;      // E(t) ~ C t^{-kappa}
  double constant = 0.0;   // C of the least-squares line
  double residual = 0.0;   // rms of log residuals
  std::size_t samples = 0;
  /// E(T1) T1^kappa / ||Phi0||^2_{D(A)}
  double normalized_constant = 0.0;
};

/// Least-squares slope of log E against log t on samples with t in [t0, t1].
/// Needs >= 20 samples, all with E > 0.
DecayFit fit_decay_exponent(const EnergyTrace& trace, double t0, double t1);

struct FitWindow {
  double t0 = 0.0;
  double t1 = 0.0;
  /// Tail factor sum_{j>J} (c_j / c_J)^2 of the truncated modal amplitudes.
  double tail_factor = 0.0;
};

/// T0 = 10 / (smallest positive damping plateau). T1 = first sample after T0
/// where tail_factor * E_J(t) / E(t) exceeds 5%, else the end of the trace.
/// Explicit fit.t0 / fit.t1 settings override either end.
FitWindow default_fit_window(const ExperimentConfig& config, const EnergyTrace& trace);

struct ReportInputs {
  std::vector<DecayFit> decay;
  std::vector<GrowthFit> growth;
  /// Free-form provenance lines (file paths, seeds, grids).
  std::vector<std::pair<std::string, std::string>> provenance;
};

struct ReportDocument {
  std::string text;
  std::string key_values;
  bool pass = true;
};

/// Throws "nothing to report" when no fit is present.
ReportDocument report(const ExperimentConfig& config, const ReportInputs& inputs);

}  // namespace cylwave
