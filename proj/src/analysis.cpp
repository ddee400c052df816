#include "cylwave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cylwave/format.hpp"
#include "cylwave/loglog.hpp"

namespace cylwave {

RatePrediction predicted_rate(const DampingConfig& config) {
  if (config.damping_case == DampingCase::lcd2) return {2, 1.0};
  if (config.a == 1.0) return {4, 0.5};
  return {6, 1.0 / 3.0};
}

DecayFit fit_decay_exponent(const EnergyTrace& trace, double t0, double t1) {
  if (!(t0 > 0.0) || !(t1 > t0)) {
    throw Error(ErrorKind::validation, "decay fit: need 0 < t0 < t1, got [" + format_g17(t0) + ", " +
                                           format_g17(t1) + "]");
  }
  std::vector<double> t;
  std::vector<double> e;
  for (std::size_t n = 0; n < trace.times.size(); ++n) {
    if (trace.times[n] < t0 || trace.times[n] > t1) continue;
    if (!(trace.energy[n] > 0.0)) throw Error(ErrorKind::validation, "zero-energy window");
    t.push_back(trace.times[n]);
    e.push_back(trace.energy[n]);
  }
  if (t.size() < 20) {
    throw Error(ErrorKind::validation,
                "decay fit needs at least 20 samples in the window, got " + std::to_string(t.size()));
  }
  const auto fit = loglog_fit(t, e);
  DecayFit out;
  out.t0 = t0;
  out.t1 = t1;
  out.kappa = -fit.slope + 0.0;
  out.constant = std::exp(fit.intercept);
  out.residual = fit.residual;
  out.samples = fit.samples;
  if (trace.graph_norm0 > 0.0) {
    out.normalized_constant = e.back() * std::pow(t.back(), out.kappa) / trace.graph_norm0;
  }
  return out;
}

namespace {

double tail_factor(double s, std::size_t J) {
  // sum_{j>J} (j/J)^{-2s}; terms decay like j^{-2s} with s >= 1 in practice.
  double sum = 0.0;
  const double Jd = static_cast<double>(J);
  for (std::size_t j = J + 1; j < J + 1000000; ++j) {
    const double term = std::pow(static_cast<double>(j) / Jd, -2.0 * s);
    sum += term;
    if (term < 1e-16 * sum) break;
  }
  return sum;
}

}  // namespace

FitWindow default_fit_window(const ExperimentConfig& config, const EnergyTrace& trace) {
  FitWindow w;
  const auto& d = config.damping;
  double rate = 0.0;
  for (double r : {d.b0, d.d0}) {
    if (r > 0.0) rate = rate > 0.0 ? std::min(rate, r) : r;
  }
  w.t0 = rate > 0.0 ? 10.0 / rate : 10.0;
  w.t1 = trace.times.empty() ? w.t0 : trace.times.back();

  const bool decaying = config.init.recipe == InitRecipe::smooth || config.init.recipe == InitRecipe::random;
  if (decaying && !trace.mode_energy.empty()) {
    w.tail_factor = tail_factor(config.init.s, trace.mode_energy.size());
    const auto& last = trace.mode_energy.back();
    for (std::size_t n = 0; n < trace.times.size(); ++n) {
      if (trace.times[n] <= w.t0 || !(trace.energy[n] > 0.0)) continue;
      if (w.tail_factor * last[n] / trace.energy[n] > 0.05) {
        w.t1 = trace.times[n];
        break;
      }
    }
  }
  if (config.fit.t0) w.t0 = *config.fit.t0;
  if (config.fit.t1) w.t1 = *config.fit.t1;
  return w;
}

ReportDocument report(const ExperimentConfig& config, const ReportInputs& inputs) {
  if (inputs.decay.empty() && inputs.growth.empty()) throw Error(ErrorKind::validation, "nothing to report");
  const auto pred = predicted_rate(config.damping);
  std::ostringstream text;
  std::ostringstream kv;
  ReportDocument doc;

  text << "configuration\n";
  text << "  case            " << to_string(config.damping.damping_case) << "\n";
  text << "  a               " << format_g17(config.damping.a) << "\n";
  text << "  cross_section   " << to_string(config.cross_section) << ", J = " << config.J << "\n";
  text << "  N               " << config.numerics.N << "\n";
  text << "predicted\n";
  text << "  ell             " << pred.ell << "\n";
  text << "  kappa           " << format_g17(pred.kappa) << "\n";
  kv << "case=" << to_string(config.damping.damping_case) << "\n";
  kv << "a=" << format_g17(config.damping.a) << "\n";
  kv << "J=" << config.J << "\n";
  kv << "N=" << config.numerics.N << "\n";
  kv << "ell_predicted=" << pred.ell << "\n";
  kv << "kappa_predicted=" << format_g17(pred.kappa) << "\n";

  for (std::size_t i = 0; i < inputs.decay.size(); ++i) {
    const auto& f = inputs.decay[i];
    const double threshold = kDecayFraction * pred.kappa;
    const bool ok = f.kappa >= threshold;
    doc.pass = doc.pass && ok;
    const std::string p = inputs.decay.size() > 1 ? "decay" + std::to_string(i + 1) + "." : "decay.";
    text << "time domain fit\n";
    text << "  window          [" << format_g17(f.t0) << ", " << format_g17(f.t1) << "], " << f.samples
         << " samples\n";
    text << "  kappa observed  " << format_g17(f.kappa) << "\n";
    text << "  threshold       kappa >= " << format_g17(threshold) << "\n";
    text << "  log residual    " << format_g17(f.residual) << "\n";
    text << "  E(T1) T1^kappa / |Phi0|^2_D  " << format_g17(f.normalized_constant) << "\n";
    text << "  result          " << (ok ? "pass" : "FAIL") << "\n";
    kv << p << "t0=" << format_g17(f.t0) << "\n" << p << "t1=" << format_g17(f.t1) << "\n";
    kv << p << "samples=" << f.samples << "\n";
    kv << p << "kappa=" << format_g17(f.kappa) << "\n";
    kv << p << "constant=" << format_g17(f.constant) << "\n";
    kv << p << "residual=" << format_g17(f.residual) << "\n";
    kv << p << "normalized_constant=" << format_g17(f.normalized_constant) << "\n";
    kv << p << "threshold=" << format_g17(threshold) << "\n";
    kv << p << "pass=" << (ok ? "true" : "false") << "\n";
  }

  for (std::size_t i = 0; i < inputs.growth.size(); ++i) {
    const auto& g = inputs.growth[i];
    const double limit = pred.ell + kGrowthSlack;
    const bool ok = g.exponent <= limit;
    doc.pass = doc.pass && ok;
    const std::string p = inputs.growth.size() > 1 ? "growth" + std::to_string(i + 1) + "." : "growth.";
    text << "frequency domain fit\n";
    text << "  window          [" << format_g17(g.lambda_lo) << ", " << format_g17(g.lambda_hi) << "], "
         << g.samples << (g.envelope ? " envelope samples\n" : " samples\n");
    text << "  p observed      " << format_g17(g.exponent) << "\n";
    text << "  threshold       p <= " << format_g17(limit) << "\n";
    text << "  log residual    " << format_g17(g.residual) << "\n";
    text << "  result          " << (ok ? "pass" : "FAIL") << "\n";
    kv << p << "lambda_lo=" << format_g17(g.lambda_lo) << "\n" << p << "lambda_hi=" << format_g17(g.lambda_hi) << "\n";
    kv << p << "samples=" << g.samples << "\n";
    kv << p << "exponent=" << format_g17(g.exponent) << "\n";
    kv << p << "intercept=" << format_g17(g.intercept) << "\n";
    kv << p << "residual=" << format_g17(g.residual) << "\n";
    kv << p << "threshold=" << format_g17(limit) << "\n";
    kv << p << "pass=" << (ok ? "true" : "false") << "\n";
  }

  if (!inputs.provenance.empty()) {
    text << "provenance\n";
    for (const auto& [key, value] : inputs.provenance) {
      text << "  " << key << ": " << value << "\n";
      kv << "provenance." << key << "=" << value << "\n";
    }
  }
  text << "overall           " << (doc.pass ? "pass" : "FAIL") << "\n";
  kv << "pass=" << (doc.pass ? "true" : "false") << "\n";
  doc.text = text.str();
  doc.key_values = kv.str();
  return doc;
}

}  // namespace cylwave
