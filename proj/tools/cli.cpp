#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "cylwave/analysis.hpp"
#include "cylwave/config.hpp"
#include "cylwave/error.hpp"
#include "cylwave/evolution.hpp"
#include "cylwave/format.hpp"
#include "cylwave/spectral.hpp"

namespace fs = std::filesystem;

namespace cylwave::cli {
namespace {

struct CommonOptions {
  std::string config_path;
  std::string preset_name;
  std::string out_dir = "runs";
  std::vector<std::string> overrides;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
};

struct Run {
  ExperimentConfig config;
  fs::path dir;
  unsigned threads = 1;
};

std::string utc_stamp(const char* pattern) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, pattern, &tm);
  return buf;
}

unsigned resolve_threads(const std::optional<unsigned>& flag) {
  if (flag) return std::max(1u, *flag);
  if (const char* env = std::getenv("CYLWAVE_THREADS"); env && *env) {
    return static_cast<unsigned>(std::max(1LL, parse_integer(env, "CYLWAVE_THREADS")));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ExperimentConfig resolve_config(const CommonOptions& opt) {
  if (!opt.config_path.empty() && !opt.preset_name.empty()) {
    throw Error(ErrorKind::usage, "--config and --preset are mutually exclusive");
  }
  ExperimentConfig cfg;
  if (!opt.config_path.empty()) {
    cfg = load_config_file(opt.config_path);
  } else if (!opt.preset_name.empty()) {
    cfg = preset(opt.preset_name);
  } else {
    throw Error(ErrorKind::usage, "one of --config or --preset is required");
  }
  for (const auto& assignment : opt.overrides) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::usage, "--set expects key=value, got '" + assignment + "'");
    apply_setting(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
  }
  if (opt.seed) cfg.init.seed = *opt.seed;
  validate(cfg);
  return cfg;
}

// create_directory reports whether it made the directory, so two runs in the
// same second still get distinct directories.
fs::path unique_run_dir(const fs::path& root, const std::string& subcommand) {
  fs::create_directories(root);
  const std::string base = subcommand + "-" + utc_stamp("%Y%m%dT%H%M%SZ");
  for (int n = 1; n < 10000; ++n) {
    const fs::path dir = root / (n == 1 ? base : base + "-" + std::to_string(n));
    if (fs::create_directory(dir)) return dir;
  }
  throw Error(ErrorKind::io, "could not create a unique run directory under " + root.string());
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::io, "cannot write " + path.string());
  return f;
}

Run start_run(const std::string& subcommand, const CommonOptions& opt, std::ostream& out) {
  Run run;
  run.config = resolve_config(opt);
  run.threads = resolve_threads(opt.threads);
  run.dir = unique_run_dir(opt.out_dir, subcommand);

  // The resolved config alone reproduces every output; the manifest records
  // how it was assembled.
  const std::string config_text = to_config_text(run.config);
  open_output(run.dir / "config.txt") << config_text;
  auto m = open_output(run.dir / "manifest.txt");
  m << "subcommand = " << subcommand << "\n";
  m << "config = " << (opt.config_path.empty() ? "preset:" + opt.preset_name : opt.config_path) << "\n";
  m << "resolved_config = config.txt\n";
  m << "output_directory = " << run.dir.string() << "\n";
  m << "seed = " << run.config.init.seed << "\n";
  for (const auto& o : opt.overrides) m << "override = " << o << "\n";
  m << "threads = " << run.threads << "\n";
  m << "tool_version = " << kToolVersion << "\n";
  m << "timestamp = " << utc_stamp("%Y-%m-%dT%H:%M:%SZ") << "\n";
  m.close();
  out << "run directory: " << run.dir.string() << "\n";
  return run;
}

int cmd_simulate(const CommonOptions& opt, bool per_mode, std::ostream& out) {
  const Run run = start_run("simulate", opt, out);
  const auto& cfg = run.config;
  const auto system = ModalSystem::from_config(cfg);
  const auto data = initial_data(system, cfg.init);
  const double dt = cfg.numerics.dt.value_or(default_time_step(system));
  SimulationOptions sim;
  sim.sample_stride = cfg.numerics.sample_stride;
  sim.threads = run.threads;
  const auto trace = simulate(system, data.state, cfg.numerics.T, dt, sim);
  {
    auto f = open_output(run.dir / "trace.csv");
    write_trace_csv(trace, f, per_mode);
  }

  const auto window = default_fit_window(cfg, trace);
  ReportInputs inputs;
  inputs.decay.push_back(fit_decay_exponent(trace, window.t0, window.t1));
  inputs.provenance = {{"trace", (run.dir / "trace.csv").string()},
                       {"initial_data", data.description},
                       {"seed", std::to_string(cfg.init.seed)},
                       {"dt", format_g17(dt)},
                       {"steps", std::to_string(trace.steps)},
                       {"tail_factor", format_g17(window.tail_factor)},
                       {"balance_bound", format_g17(trace.balance_bound)}};
  const auto doc = report(cfg, inputs);
  open_output(run.dir / "fit.txt") << doc.text;
  open_output(run.dir / "fit.kv") << doc.key_values;

  const auto& fit = inputs.decay.front();
  char line[160];
  std::snprintf(line, sizeof line, "kappa = %.4f on [%g, %g] (predicted %.4f): %s\n", fit.kappa, fit.t0, fit.t1,
                predicted_rate(cfg.damping).kappa, doc.pass ? "pass" : "FAIL");
  out << line;
  return doc.pass ? kExitOk : kExitThreshold;
}

int cmd_resolvent(const CommonOptions& opt, std::optional<double> synthetic, std::ostream& out) {
  const Run run = start_run("resolvent", opt, out);
  const auto& cfg = run.config;
  const auto grid = resolvent_grid(cfg.resolvent, cfg.spectrum(), cfg.damping.a);
  ResolventSweep sweep;
  if (synthetic) {
    sweep = synthetic_sweep(grid, *synthetic);
  } else {
    const auto system = ModalSystem::from_config(cfg);
    ProbeOptions probe;
    probe.lanczos.tolerance = cfg.resolvent.tolerance;
    probe.threads = run.threads;
    sweep = resolvent_sweep(system, grid, probe);
  }
  {
    auto f = open_output(run.dir / "sweep.csv");
    write_sweep_csv(sweep, f);
  }

  ReportInputs inputs;
  inputs.growth.push_back(growth_exponent(sweep, cfg.resolvent.lambda_min, cfg.resolvent.lambda_max));
  inputs.provenance = {{"sweep", (run.dir / "sweep.csv").string()},
                       {"grid", std::to_string(grid.size()) + " points, " + std::to_string(cfg.resolvent.points) +
                                    " log-spaced on [" + format_g17(cfg.resolvent.lambda_min) + ", " +
                                    format_g17(cfg.resolvent.lambda_max) + "] plus refinement"},
                       {"source", synthetic ? "synthetic lambda^" + format_g17(*synthetic) : "Lanczos"}};
  const auto doc = report(cfg, inputs);
  open_output(run.dir / "growth.txt") << doc.text;
  open_output(run.dir / "growth.kv") << doc.key_values;

  const auto& g = inputs.growth.front();
  char line[160];
  std::snprintf(line, sizeof line, "p = %.3f over %zu envelope samples (limit %.1f): %s\n", g.exponent, g.samples,
                predicted_rate(cfg.damping).ell + kGrowthSlack, doc.pass ? "pass" : "FAIL");
  out << line;
  return doc.pass ? kExitOk : kExitThreshold;
}

int cmd_spectrum(const CommonOptions& opt, std::ostream& out) {
  const Run run = start_run("spectrum", opt, out);
  const auto& cfg = run.config;
  const auto system = ModalSystem::from_config(cfg);
  double max_re = -std::numeric_limits<double>::infinity();
  std::size_t max_mode = 0;
  {
    auto f = open_output(run.dir / "spectrum.csv");
    f << "mode,re,im\n";
    for (std::size_t j = 0; j < system.modes(); ++j) {
      for (const auto& ev : modal_spectrum(system.block(j), cfg.resolvent.dense_cap)) {
        f << j + 1 << ',' << format_sci17(ev.real()) << ',' << format_sci17(ev.imag()) << "\n";
        if (ev.real() > max_re) {
          max_re = ev.real();
          max_mode = j + 1;
        }
      }
    }
  }
  // An undamped configuration cannot be strongly stable; it passes when the
  // spectrum sits on the imaginary axis to working precision.
  const bool conservative = std::abs(max_re) <= kConservativeTolerance;
  const bool pass = cfg.damping.undamped ? conservative : max_re < 0.0;
  auto s = open_output(run.dir / "spectrum.txt");
  s << "max_re=" << format_g17(max_re) << "\n";
  s << "max_re_mode=" << max_mode << "\n";
  s << "conservative=" << (conservative ? "true" : "false") << "\n";
  s << "pass=" << (pass ? "true" : "false") << "\n";
  out << "max Re = " << format_g17(max_re) << " (mode " << max_mode << ")" << (conservative ? ", conservative" : "")
      << ": " << (pass ? "pass" : "FAIL") << "\n";
  return pass ? kExitOk : kExitThreshold;
}

void add_common(CLI::App* app, CommonOptions& opt) {
  app->add_option("--config", opt.config_path, "Configuration file");
  app->add_option("--preset", opt.preset_name, "Named preset (fig1-left, fig1-right, fig2, fig3, undamped)");
  app->add_option("--out", opt.out_dir, "Root directory for run outputs")->capture_default_str();
  app->add_option("--set", opt.overrides, "Override a configuration key (key=value, repeatable)");
  app->add_option("--threads", opt.threads, "Worker threads (falls back to CYLWAVE_THREADS)");
  app->add_option("--seed", opt.seed, "Seed for random initial data");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stability laboratory for coupled damped wave equations on cylinders", "cylwave"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  CommonOptions sim_opt;
  bool per_mode = false;
  auto* sim = app.add_subcommand("simulate", "Evolve initial data and fit the energy decay exponent");
  add_common(sim, sim_opt);
  sim->add_flag("--per-mode", per_mode, "Add per-mode energy columns to trace.csv");

  CommonOptions res_opt;
  std::optional<double> synthetic;
  auto* res = app.add_subcommand("resolvent", "Sweep the resolvent norm and fit its growth exponent");
  add_common(res, res_opt);
  res->add_option("--synthetic", synthetic, "Replace the solver by exact norm = lambda^P samples");

  CommonOptions spec_opt;
  auto* spec = app.add_subcommand("spectrum", "Dense eigenvalues of every modal block");
  add_common(spec, spec_opt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*sim) return cmd_simulate(sim_opt, per_mode, out);
    if (*res) return cmd_resolvent(res_opt, synthetic, out);
    return cmd_spectrum(spec_opt, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace cylwave::cli
