#include "cylwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "cylwave/format.hpp"
#include "cylwave/loglog.hpp"
#include "cylwave/parallel.hpp"

namespace cylwave {

namespace {

constexpr cplx I{0.0, 1.0};

using CVec = Eigen::VectorXcd;

std::span<cplx> span_of(CVec& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<const cplx> span_of(const CVec& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

// Deterministic start vector with no special symmetry.
CVec start_vector(Eigen::Index n) {
  CVec u(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i);
    u[i] = cplx(1.0 + 0.5 * std::cos(0.7 * t + 0.3), 0.25 * std::sin(1.3 * t + 0.1));
  }
  return u.normalized();
}

// T u = G^{-T} R^H W R G^{-1} u with R = (i lambda - A)^{-1}.
class NormalOperator {
 public:
  NormalOperator(const ShiftedBlockSolver& solver, const GramFactor& gram)
      : solver_(solver), gram_(gram), a_(solver.block().dim()), b_(solver.block().dim()) {}

  void apply(const CVec& u, CVec& out) {
    out.resize(u.size());
    gram_.apply_inverse(span_of(u), span_of(a_));
    solver_.solve(span_of(a_), span_of(b_));
    gram_.apply(span_of(b_), span_of(a_));
    gram_.apply_transpose(span_of(a_), span_of(b_));
    solver_.solve_adjoint(span_of(b_), span_of(a_));
    gram_.apply_inverse_transpose(span_of(a_), span_of(out));
  }

 private:
  const ShiftedBlockSolver& solver_;
  const GramFactor& gram_;
  CVec a_;
  CVec b_;
};

double perturbation_norm(const ModalBlock& block) {
  const auto b = block.b();
  const auto c = block.c();
  const auto d = block.d();
  double worst = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    worst = std::max(worst, std::sqrt(b[i] * b[i] + 2.0 * c[i] * c[i] + d[i] * d[i]));
  }
  return worst;
}

}  // namespace

// ---------------------------------------------------------------------------

ShiftedBlockSolver::ShiftedBlockSolver(const ModalBlock& block, double lambda)
    : block_(&block), lambda_(lambda), reduced_(2 * static_cast<std::size_t>(block.nodes()), 2, 2) {
  const auto n = static_cast<std::size_t>(block.nodes());
  const double l2 = lambda * lambda;
  const double a = block.a();
  const double ld = block.stencil_diag();
  const double lo = block.stencil_off();
  const auto b = block.b();
  const auto c = block.c();
  const auto d = block.d();
  // Unknowns interleaved per node: (phi_i, psi_i) -> (2i, 2i+1).
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t p = 2 * i;
    const std::size_t q = 2 * i + 1;
    reduced_.at(p, p) = cplx(ld - l2, lambda * b[i]);
    reduced_.at(p, q) = I * (lambda * c[i]);
    reduced_.at(q, p) = -I * (lambda * c[i]);
    reduced_.at(q, q) = cplx(a * ld - l2, lambda * d[i]);
    if (i > 0) {
      reduced_.at(p, p - 2) = lo;
      reduced_.at(q, q - 2) = a * lo;
    }
    if (i + 1 < n) {
      reduced_.at(p, p + 2) = lo;
      reduced_.at(q, q + 2) = a * lo;
    }
  }
  reduced_.factorize();
  rhs_.resize(2 * n);
}

void ShiftedBlockSolver::solve(std::span<const cplx> f, std::span<cplx> x) const {
  const auto& blk = *block_;
  const auto n = static_cast<std::size_t>(blk.nodes());
  if (f.size() != 4 * n || x.size() != 4 * n) throw Error(ErrorKind::validation, "shifted solve: wrong length");
  const auto b = blk.b();
  const auto c = blk.c();
  const auto d = blk.d();
  const cplx il = I * lambda_;
  const cplx* f1 = f.data();
  const cplx* f2 = f1 + n;
  const cplx* f3 = f2 + n;
  const cplx* f4 = f3 + n;
  for (std::size_t i = 0; i < n; ++i) {
    rhs_[2 * i] = f2[i] + (il + b[i]) * f1[i] + c[i] * f3[i];
    rhs_[2 * i + 1] = f4[i] + (il + d[i]) * f3[i] - c[i] * f1[i];
  }
  reduced_.solve(rhs_);
  cplx* phi = x.data();
  cplx* v = phi + n;
  cplx* psi = v + n;
  cplx* z = psi + n;
  for (std::size_t i = 0; i < n; ++i) {
    phi[i] = rhs_[2 * i];
    psi[i] = rhs_[2 * i + 1];
    v[i] = il * phi[i] - f1[i];
    z[i] = il * psi[i] - f3[i];
  }
}

void ShiftedBlockSolver::solve_adjoint(std::span<const cplx> g, std::span<cplx> y) const {
  const auto& blk = *block_;
  const auto n = static_cast<std::size_t>(blk.nodes());
  if (g.size() != 4 * n || y.size() != 4 * n) throw Error(ErrorKind::validation, "shifted solve: wrong length");
  const auto b = blk.b();
  const auto c = blk.c();
  const auto d = blk.d();
  const cplx il = I * lambda_;
  const cplx* g1 = g.data();
  const cplx* g2 = g1 + n;
  const cplx* g3 = g2 + n;
  const cplx* g4 = g3 + n;
  for (std::size_t i = 0; i < n; ++i) {
    rhs_[2 * i] = g1[i] - il * g2[i];
    rhs_[2 * i + 1] = g3[i] - il * g4[i];
  }
  reduced_.solve_adjoint(rhs_);
  cplx* y1 = y.data();
  cplx* y2 = y1 + n;
  cplx* y3 = y2 + n;
  cplx* y4 = y3 + n;
  for (std::size_t i = 0; i < n; ++i) {
    y2[i] = rhs_[2 * i];
    y4[i] = rhs_[2 * i + 1];
    y1[i] = (b[i] - il) * y2[i] - c[i] * y4[i] - g2[i];
    y3[i] = c[i] * y2[i] + (d[i] - il) * y4[i] - g4[i];
  }
}

// ---------------------------------------------------------------------------

SingularEstimate smallest_singular_value(const ShiftedBlockSolver& solver, const GramFactor& gram,
                                         const LanczosOptions& options, bool want_forcing) {
  const auto dim = static_cast<Eigen::Index>(solver.block().dim());
  const Eigen::Index m = std::min<Eigen::Index>(dim, std::max(2, options.cycle_length));
  NormalOperator op(solver, gram);

  Eigen::MatrixXcd Q(dim, m + 1);
  CVec w;
  CVec ritz = start_vector(dim);
  SingularEstimate out;
  double theta = 0.0;
  double residual = std::numeric_limits<double>::infinity();

  for (int cycle = 0; cycle <= options.max_restarts; ++cycle) {
    std::vector<double> alpha;
    std::vector<double> beta;
    Q.col(0) = ritz;
    Eigen::VectorXd s_top;
    bool done = false;
    Eigen::Index k = 0;
    for (; k < m; ++k) {
      op.apply(Q.col(k), w);
      ++out.iterations;
      const double ak = (Q.col(k).adjoint() * w)(0).real();
      alpha.push_back(ak);
      // Full reorthogonalization, applied twice.
      for (int pass = 0; pass < 2; ++pass) {
        const CVec coef = Q.leftCols(k + 1).adjoint() * w;
        w.noalias() -= Q.leftCols(k + 1) * coef;
      }
      const double bk = w.norm();

      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      const Eigen::Index size = k + 1;
      Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), size);
      Eigen::VectorXd sub(std::max<Eigen::Index>(size - 1, 0));
      for (Eigen::Index i = 0; i + 1 < size; ++i) sub[i] = beta[static_cast<std::size_t>(i)];
      if (size == 1) {
        theta = diag[0];
        s_top = Eigen::VectorXd::Ones(1);
      } else {
        tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        theta = tri.eigenvalues()[size - 1];
        s_top = tri.eigenvectors().col(size - 1);
      }
      residual = theta > 0.0 ? bk * std::abs(s_top[size - 1]) / theta : std::numeric_limits<double>::infinity();
      if (!std::isfinite(theta)) throw Error(ErrorKind::numerical, "Lanczos: non-finite Ritz value");
      if (residual <= options.tolerance || bk <= 1e-300 || size == dim) {
        done = true;
        ++k;
        break;
      }
      beta.push_back(bk);
      Q.col(k + 1) = w / bk;
    }
    const Eigen::Index used = std::min<Eigen::Index>(k, m);
    ritz = (Q.leftCols(used) * s_top.head(used)).normalized();
    if (done) break;
  }
  if (!(residual <= options.tolerance) && residual > 1e-8) {
    throw Error(ErrorKind::numerical, "Lanczos did not converge (relative residual " + format_g17(residual) + ")");
  }
  out.residual = residual;
  out.sigma = 1.0 / std::sqrt(theta);
  if (want_forcing) {
    out.forcing.resize(static_cast<std::size_t>(dim));
    gram.apply_inverse(span_of(ritz), out.forcing);
  }
  return out;
}

std::vector<cplx> modal_spectrum(const ModalBlock& block, std::size_t dense_cap) {
  if (block.dim() > dense_cap) {
    throw Error(ErrorKind::validation, "dense eigensolve of dimension " + std::to_string(block.dim()) +
                                           " exceeds the cap " + std::to_string(dense_cap) +
                                           "; use targeted shift solves (resolvent subcommand) instead");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(block.dense_operator(), false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::numerical, "dense eigensolve failed");
  std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end(), [](cplx x, cplx y) {
    return x.imag() != y.imag() ? x.imag() < y.imag() : x.real() < y.real();
  });
  return out;
}

double mode_cutoff(double lambda, double a) { return 2.0 * std::abs(lambda) / std::sqrt(std::min(1.0, a)); }

double certified_sigma_bound(const ModalBlock& block, double lambda) {
  if (block.weight() != EnergyWeight::balanced) return 0.0;
  const double omega = std::min(1.0, std::sqrt(block.a())) *
                       std::sqrt(block.mu() * block.mu() + block.laplacian_floor());
  return omega - std::abs(lambda) - perturbation_norm(block);
}

// ---------------------------------------------------------------------------

namespace {

struct ModeResult {
  double sigma = 0.0;
  bool singular = false;
};

ModeResult probe_mode(const ModalBlock& block, double lambda, const LanczosOptions& options) {
  std::optional<ShiftedBlockSolver> solver;
  try {
    solver.emplace(block, lambda);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::numerical) throw;
    return {0.0, true};
  }
  const GramFactor gram(block);
  const auto est = smallest_singular_value(*solver, gram, options, false);
  return {est.sigma, !(est.sigma > 0.0)};
}

}  // namespace

ResolventSample resolvent_norm(const ModalSystem& system, double lambda, const ProbeOptions& options) {
  if (!std::isfinite(lambda)) throw Error(ErrorKind::domain, "resolvent: lambda must be finite");
  const std::size_t J = system.modes();
  const bool use_bounds = !options.all_modes && system.weight() == EnergyWeight::balanced;
  // Modes whose undamped frequencies can reach lambda are always solved.
  // The spectrum is nondecreasing, so they form a prefix.
  const double mu_resonant = 0.5 * mode_cutoff(lambda, system.config().a);
  std::size_t resonant = J;
  if (use_bounds) {
    resonant = 0;
    while (resonant < J && system.block(resonant).mu() <= mu_resonant) ++resonant;
  }

  std::vector<ModeResult> results(J);
  std::vector<char> solved(J, 0);
  std::vector<char> bounded(J, 0);
  parallel_for(resonant, options.threads, [&](std::size_t j) {
    results[j] = probe_mode(system.block(j), lambda, options.lanczos);
    solved[j] = 1;
  });

  double worst = 0.0;
  bool singular = false;
  for (std::size_t j = 0; j < resonant; ++j) {
    if (results[j].singular) {
      singular = true;
      break;
    }
    worst = std::max(worst, 1.0 / results[j].sigma);
  }

  // Remaining modes in increasing mu: a certified lower bound on sigma_min
  // that already rules the mode out replaces the solve. Bounds grow with
  // mu, so the first certified mode certifies every later one.
  for (std::size_t j = resonant; j < J && !singular; ++j) {
    const double bound = certified_sigma_bound(system.block(j), lambda);
    if (bound > 0.0 && 1.0 / bound < worst) {
      for (std::size_t r = j; r < J; ++r) {
        results[r].sigma = certified_sigma_bound(system.block(r), lambda);
        bounded[r] = 1;
      }
      break;
    }
    results[j] = probe_mode(system.block(j), lambda, options.lanczos);
    solved[j] = 1;
    if (results[j].singular) {
      singular = true;
      break;
    }
    worst = std::max(worst, 1.0 / results[j].sigma);
  }

  ResolventSample sample;
  sample.lambda = lambda;
  sample.sigma_min = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < J; ++j) {
    if (!solved[j] && !bounded[j]) continue;
    sample.sigma_min_per_mode.push_back({j + 1, results[j].sigma, bounded[j] != 0});
    if (!solved[j]) continue;
    ++sample.solved_modes;
    if (results[j].singular) {
      sample.sigma_min = 0.0;
      sample.argmax_mode = j + 1;
      break;
    }
    if (results[j].sigma < sample.sigma_min) {
      sample.sigma_min = results[j].sigma;
      sample.argmax_mode = j + 1;
    }
  }
  sample.singular = singular;
  sample.norm = singular ? std::numeric_limits<double>::infinity() : 1.0 / sample.sigma_min;

  if (options.want_forcing && !singular && sample.argmax_mode > 0) {
    const auto& blk = system.block(sample.argmax_mode - 1);
    const ShiftedBlockSolver solver(blk, lambda);
    const GramFactor gram(blk);
    sample.worst_forcing = smallest_singular_value(solver, gram, options.lanczos, true).forcing;
  }
  return sample;
}

std::vector<double> resolvent_grid(const ResolventSettings& settings, const CrossSectionSpectrum& spectrum,
                                   double a) {
  const double lo = settings.lambda_min;
  const double hi = settings.lambda_max;
  if (!(lo > 0.0) || !(lo < hi) || settings.points < 2) {
    throw Error(ErrorKind::validation, "empty grid: need 0 < lambda_min < lambda_max and at least 2 points");
  }
  std::vector<double> grid;
  const int P = settings.points;
  for (int i = 0; i < P; ++i) {
    grid.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (P - 1)));
  }
  grid.back() = hi;
  const double hw = settings.refine_halfwidth;
  for (double mu : spectrum.mus) {
    for (int k = 1; k <= settings.refine_k; ++k) {
      const double w = std::sqrt(k * k * std::numbers::pi * std::numbers::pi + mu * mu);
      for (double centre : {w, std::sqrt(a) * w}) {
        if (centre < lo || centre > hi) continue;
        for (int t = -4; t <= 4; ++t) {
          const double x = centre * (1.0 + hw * t / 4.0);
          if (x >= lo && x <= hi) grid.push_back(x);
        }
      }
    }
  }
  std::sort(grid.begin(), grid.end());
  std::vector<double> out;
  for (double x : grid) {
    if (out.empty() || x - out.back() > 1e-12 * x) out.push_back(x);
  }
  return out;
}

namespace {

void fill_envelope(ResolventSweep& sweep) {
  sweep.envelope.resize(sweep.samples.size());
  double run = 0.0;
  for (std::size_t i = 0; i < sweep.samples.size(); ++i) {
    run = std::max(run, sweep.samples[i].norm);
    sweep.envelope[i] = run;
  }
}

}  // namespace

ResolventSweep resolvent_sweep(const ModalSystem& system, std::span<const double> grid, const ProbeOptions& options) {
  if (grid.empty()) throw Error(ErrorKind::validation, "empty grid");
  if (!std::is_sorted(grid.begin(), grid.end())) throw Error(ErrorKind::validation, "resolvent grid must be sorted");
  ResolventSweep sweep;
  sweep.samples.resize(grid.size());
  ProbeOptions inner = options;
  inner.threads = 1;
  parallel_for(grid.size(), options.threads,
               [&](std::size_t i) { sweep.samples[i] = resolvent_norm(system, grid[i], inner); });
  fill_envelope(sweep);
  return sweep;
}

ResolventSweep synthetic_sweep(std::span<const double> grid, double power) {
  ResolventSweep sweep;
  for (double x : grid) {
    ResolventSample s;
    s.lambda = x;
    s.norm = std::pow(x, power);
    s.sigma_min = 1.0 / s.norm;
    s.argmax_mode = 1;
    sweep.samples.push_back(s);
  }
  fill_envelope(sweep);
  return sweep;
}

GrowthFit growth_exponent(const ResolventSweep& sweep, double lo, double hi) {
  std::vector<double> x;
  std::vector<double> y;
  double run = 0.0;
  for (const auto& s : sweep.samples) {
    if (s.lambda < lo || s.lambda > hi || !(s.lambda > 0.0)) continue;
    if (!std::isfinite(s.norm)) {
      throw Error(ErrorKind::numerical, "growth fit: singular sample at lambda = " + format_g17(s.lambda));
    }
    run = std::max(run, s.norm);
    x.push_back(s.lambda);
    y.push_back(run);
  }
  if (x.size() < 8) {
    throw Error(ErrorKind::validation,
                "growth fit needs at least 8 envelope samples in the window, got " + std::to_string(x.size()));
  }
  const auto fit = loglog_fit(x, y);
  GrowthFit g;
  g.lambda_lo = x.front();
  g.lambda_hi = x.back();
  g.exponent = fit.slope;
  g.intercept = fit.intercept;
  g.residual = fit.residual;
  g.samples = fit.samples;
  return g;
}

ResolventDiagnostics resolvent_diagnostics(const ModalSystem& system, double lambda, const ProbeOptions& options) {
  ProbeOptions probe = options;
  probe.want_forcing = true;
  const auto sample = resolvent_norm(system, lambda, probe);
  if (sample.singular) {
    throw Error(ErrorKind::numerical, "diagnostics: shift is an eigenvalue of mode " +
                                          std::to_string(sample.argmax_mode));
  }
  const auto& blk = system.block(sample.argmax_mode - 1);
  const ShiftedBlockSolver solver(blk, lambda);
  const auto& F = sample.worst_forcing;
  std::vector<cplx> phi(F.size());
  solver.solve(F, phi);

  const auto n = static_cast<std::size_t>(blk.nodes());
  const double h = blk.grid().h;
  const auto b = blk.b();
  const auto d = blk.d();
  ResolventDiagnostics out;
  out.lambda = lambda;
  out.mode = sample.argmax_mode;
  out.sigma_min = sample.sigma_min;
  for (std::size_t i = 0; i < n; ++i) {
    out.damped_v += h * b[i] * std::norm(phi[n + i]);
    out.damped_z += h * d[i] * std::norm(phi[3 * n + i]);
    out.damped_phi += h * lambda * lambda * b[i] * std::norm(phi[i]);
    out.damped_psi += h * lambda * lambda * d[i] * std::norm(phi[2 * n + i]);
  }
  out.forcing_pairing = blk.inner<cplx>(F, phi);
  out.solution_norm2 = blk.energy_norm2<cplx>(phi);
  const double lhs = out.damped_v + out.damped_z;
  const double rhs = out.forcing_pairing;
  // When both sides vanish to working precision (no damping) the residual is
  // measured against ||F||_W ||Phi||_W instead.
  const double pairing_scale = std::sqrt(blk.energy_norm2<cplx>(F) * out.solution_norm2);
  const double scale = std::max(lhs, std::abs(rhs));
  const double denom = scale > 1e-13 * pairing_scale ? scale : pairing_scale;
  out.identity_residual = denom > 0.0 ? std::abs(lhs - rhs) / denom : 0.0;
  return out;
}

void write_sweep_csv(const ResolventSweep& sweep, std::ostream& out) {
  out << "lambda,norm,argmax_mode,sigma_min\n";
  for (const auto& s : sweep.samples) {
    out << format_sci17(s.lambda) << ',' << format_sci17(s.norm) << ',' << s.argmax_mode << ','
        << format_sci17(s.sigma_min) << "\n";
  }
}

}  // namespace cylwave
