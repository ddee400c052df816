#include "cylwave/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <utility>

#include "cylwave/format.hpp"

namespace cylwave {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

bool in_half_open(double x, double lo, double hi) { return x >= lo && x < hi; }

// True when [s0, s1) and (lo, hi) share a set of positive length.
bool overlaps(double s0, double s1, double lo, double hi) {
  return std::min(s1, hi) - std::max(s0, lo) > 0.0;
}

template <class Check>
void for_each_segment(const StepProfile& p, Check&& check) {
  for (std::size_t k = 0; k < p.starts.size(); ++k) {
    const double s1 = k + 1 < p.starts.size() ? p.starts[k + 1] : 1.0;
    check(p.starts[k], s1, p.values[k]);
  }
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

std::string_view unquote(std::string_view v) {
  v = trim(v);
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') || (v.front() == '\'' && v.back() == '\''))) {
    v = v.substr(1, v.size() - 2);
  }
  return v;
}

DampingCase parse_case(std::string_view v) {
  const auto s = lower(v);
  if (s == "lcd1") return DampingCase::lcd1;
  if (s == "lcd2") return DampingCase::lcd2;
  fail(ErrorKind::validation, "case: expected LCD1 or LCD2, got '" + std::string(v) + "'");
}

CrossSection parse_source(std::string_view v) {
  const auto s = lower(v);
  if (s == "interval") return CrossSection::interval;
  if (s == "square") return CrossSection::square;
  if (s == "user_file" || s == "file") return CrossSection::user_file;
  fail(ErrorKind::validation, "cross_section.source: unknown source '" + std::string(v) + "'");
}

EnergyWeight parse_weight(std::string_view v) {
  const auto s = lower(v);
  if (s == "balanced") return EnergyWeight::balanced;
  if (s == "literal") return EnergyWeight::literal;
  fail(ErrorKind::validation, "numerics.energy_weight: expected balanced or literal");
}

InitRecipe parse_recipe(std::string_view v) {
  const auto s = lower(v);
  if (s == "zero") return InitRecipe::zero;
  if (s == "smooth") return InitRecipe::smooth;
  if (s == "single") return InitRecipe::single;
  if (s == "random") return InitRecipe::random;
  fail(ErrorKind::validation, "init.recipe: unknown recipe '" + std::string(v) + "'");
}

std::string_view to_string(EnergyWeight w) { return w == EnergyWeight::balanced ? "balanced" : "literal"; }

std::string_view to_string(InitRecipe r) {
  switch (r) {
    case InitRecipe::zero: return "zero";
    case InitRecipe::smooth: return "smooth";
    case InitRecipe::single: return "single";
    case InitRecipe::random: return "random";
  }
  return "smooth";
}

int as_int(std::string_view v, std::string_view key) {
  const long long n = parse_integer(v, key);
  if (n < -2147483647LL || n > 2147483647LL) fail(ErrorKind::validation, std::string(key) + ": out of range");
  return static_cast<int>(n);
}

std::size_t as_count(std::string_view v, std::string_view key) {
  const long long n = parse_integer(v, key);
  if (n < 0) fail(ErrorKind::validation, std::string(key) + ": must be nonnegative");
  return static_cast<std::size_t>(n);
}

}  // namespace

std::string_view to_string(DampingCase c) { return c == DampingCase::lcd1 ? "LCD1" : "LCD2"; }

std::string_view to_string(CrossSection s) {
  switch (s) {
    case CrossSection::interval: return "interval";
    case CrossSection::square: return "square";
    case CrossSection::user_file: return "user_file";
  }
  return "interval";
}

// ---------------------------------------------------------------------------
// StepProfile

double StepProfile::at(double x) const {
  const auto it = std::upper_bound(starts.begin(), starts.end(), x);
  if (it == starts.begin()) return values.front();
  return values[static_cast<std::size_t>(it - starts.begin()) - 1];
}

StepProfile StepProfile::parse(std::string_view text) {
  StepProfile p;
  std::size_t pos = 0;
  text = unquote(text);
  while (pos <= text.size()) {
    auto next = text.find(',', pos);
    if (next == std::string_view::npos) next = text.size();
    const auto item = trim(text.substr(pos, next - pos));
    if (!item.empty()) {
      const auto colon = item.find(':');
      if (colon == std::string_view::npos) fail(ErrorKind::validation, "profile entry '" + std::string(item) + "' lacks ':'");
      p.starts.push_back(parse_double(item.substr(0, colon), "profile breakpoint"));
      p.values.push_back(parse_double(item.substr(colon + 1), "profile value"));
    }
    pos = next + 1;
  }
  if (p.starts.empty()) fail(ErrorKind::validation, "profile table is empty");
  if (p.starts.front() != 0.0) fail(ErrorKind::validation, "profile table must start at x = 0");
  for (std::size_t k = 1; k < p.starts.size(); ++k) {
    if (!(p.starts[k] > p.starts[k - 1]) || p.starts[k] >= 1.0) {
      fail(ErrorKind::validation, "profile breakpoints must increase inside [0,1)");
    }
  }
  return p;
}

std::string StepProfile::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    if (k) out += ", ";
    out += format_g17(starts[k]) + ":" + format_g17(values[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// DampingConfig

void validate(const DampingConfig& c) {
  if (!(c.a > 0.0) || !std::isfinite(c.a)) fail(ErrorKind::domain, "wave speed ratio a must be positive");
  const auto& al = c.alphas;
  for (int i = 0; i < 4; ++i) {
    if (!(al[i] >= 0.0 && al[i] <= 1.0)) {
      fail(ErrorKind::validation, "alpha" + std::to_string(i + 1) + " must lie in [0,1]");
    }
  }
  for (int i = 0; i < 3; ++i) {
    if (!(al[i] < al[i + 1])) {
      fail(ErrorKind::validation,
           "alpha" + std::to_string(i + 1) + " < alpha" + std::to_string(i + 2) + " violated");
    }
  }
  if (c.coupling_sign != 1.0 && c.coupling_sign != -1.0) fail(ErrorKind::validation, "coupling_sign must be +1 or -1");

  if (c.damping_case == DampingCase::lcd1) {
    if (c.d0 > 0.0) fail(ErrorKind::inconsistent_case, "case LCD1 requires d = 0 but d0 > 0");
    if (c.d_table) {
      for_each_segment(*c.d_table, [](double, double, double v) {
        if (v != 0.0) fail(ErrorKind::inconsistent_case, "case LCD1 requires d = 0 but the d profile is nonzero");
      });
    }
  }
  if (c.undamped) return;

  if (!(c.b0 > 0.0)) fail(ErrorKind::validation, "b0 > 0 violated");
  if (!(c.c0 > 0.0)) fail(ErrorKind::validation, "c0 > 0 violated");
  if (c.d0 < 0.0) fail(ErrorKind::validation, "d0 >= 0 violated");
  if (c.damping_case == DampingCase::lcd2 && !(c.d0 > 0.0)) fail(ErrorKind::validation, "case LCD2 requires d0 > 0");

  if (c.b_table) {
    for_each_segment(*c.b_table, [&](double s0, double s1, double v) {
      if (v < 0.0) fail(ErrorKind::validation, "b >= 0 violated by the b profile");
      if (overlaps(s0, s1, al[0], al[3]) && v < c.b0) fail(ErrorKind::validation, "b >= b0 on (alpha1,alpha4) violated by the b profile");
    });
  }
  if (c.c_table) {
    for_each_segment(*c.c_table, [&](double s0, double s1, double v) {
      const bool inside = overlaps(s0, s1, al[1], al[2]);
      const bool outside = overlaps(s0, s1, 0.0, al[1]) || overlaps(s0, s1, al[2], 1.0);
      if (inside && std::abs(v) < c.c0) fail(ErrorKind::validation, "|c| >= c0 on (alpha2,alpha3) violated by the c profile");
      if (outside && v != 0.0) fail(ErrorKind::validation, "c = 0 outside (alpha2,alpha3) violated by the c profile");
    });
  }
  if (c.d_table && c.damping_case == DampingCase::lcd2) {
    for_each_segment(*c.d_table, [&](double s0, double s1, double v) {
      if (v < 0.0) fail(ErrorKind::validation, "d >= 0 violated by the d profile");
      if (overlaps(s0, s1, al[0], al[3]) && v < c.d0) fail(ErrorKind::validation, "d >= d0 on (alpha1,alpha4) violated by the d profile");
    });
  }
}

DampingValues damping_at(const DampingConfig& c, double x) {
  if (!(x >= 0.0 && x <= 1.0)) fail(ErrorKind::domain, "damping_at: x = " + format_g17(x) + " outside [0,1]");
  DampingValues out;
  if (c.undamped) return out;
  const auto& al = c.alphas;
  out.b = c.b_table ? c.b_table->at(x) : (in_half_open(x, al[0], al[3]) ? c.b0 : 0.0);
  out.c = c.c_table ? c.c_table->at(x) : (in_half_open(x, al[1], al[2]) ? c.coupling_sign * c.c0 : 0.0);
  if (c.damping_case == DampingCase::lcd2) {
    out.d = c.d_table ? c.d_table->at(x) : (in_half_open(x, al[0], al[3]) ? c.d0 : 0.0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cross-section spectrum

CrossSectionSpectrum cross_section_eigenvalues(CrossSection source, std::size_t count) {
  if (count < 1) fail(ErrorKind::validation, "cross-section mode count J must be >= 1");
  CrossSectionSpectrum out;
  out.source = source;
  out.mus.reserve(count);
  switch (source) {
    case CrossSection::interval:
      for (std::size_t j = 1; j <= count; ++j) out.mus.push_back(static_cast<double>(j) * kPi);
      break;
    case CrossSection::square: {
      // Every pair with p^2+q^2 <= P^2 has p,q <= P, so the sorted list
      // truncated to those values is complete.
      long long P = 1;
      std::vector<long long> sums;
      for (;;) {
        sums.clear();
        for (long long p = 1; p <= P; ++p)
          for (long long q = 1; q <= P; ++q)
            if (p * p + q * q <= P * P) sums.push_back(p * p + q * q);
        if (sums.size() >= count) break;
        P *= 2;
      }
      std::sort(sums.begin(), sums.end());
      for (std::size_t j = 0; j < count; ++j) out.mus.push_back(kPi * std::sqrt(static_cast<double>(sums[j])));
      break;
    }
    case CrossSection::user_file:
      fail(ErrorKind::validation, "user_file spectra are read with cross_section_from_file");
  }
  return out;
}

CrossSectionSpectrum cross_section_from_values(std::vector<double> mus) {
  if (mus.empty()) fail(ErrorKind::validation, "cross-section spectrum is empty");
  for (std::size_t j = 0; j < mus.size(); ++j) {
    if (!(mus[j] > 0.0) || !std::isfinite(mus[j])) fail(ErrorKind::validation, "cross-section frequencies must be positive");
    if (j > 0 && mus[j] < mus[j - 1]) fail(ErrorKind::validation, "cross-section frequencies must be nondecreasing");
  }
  CrossSectionSpectrum out;
  out.source = CrossSection::user_file;
  out.mus = std::move(mus);
  return out;
}

CrossSectionSpectrum cross_section_from_file(const std::string& path, std::size_t count) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open spectrum file '" + path + "'");
  std::vector<double> mus;
  std::string token;
  while (in >> token) {
    if (token.front() == '#') {
      std::getline(in, token);
      continue;
    }
    mus.push_back(parse_double(token, "spectrum file entry"));
  }
  auto spec = cross_section_from_values(std::move(mus));
  if (count > 0) {
    if (spec.mus.size() < count) fail(ErrorKind::validation, "spectrum file has fewer than J entries");
    spec.mus.resize(count);
  }
  return spec;
}

CrossSectionSpectrum ExperimentConfig::spectrum() const {
  if (cross_section == CrossSection::user_file) return cross_section_from_file(cross_section_file, J);
  return cross_section_eigenvalues(cross_section, J);
}

// ---------------------------------------------------------------------------
// Key/value documents

void apply_setting(ExperimentConfig& cfg, std::string_view key_in, std::string_view value_in) {
  const std::string key = lower(trim(key_in));
  const std::string_view v = unquote(value_in);
  auto& d = cfg.damping;
  auto& n = cfg.numerics;
  auto& r = cfg.resolvent;
  auto& in = cfg.init;

  if (key == "a") d.a = parse_double(v, key);
  else if (key == "case") d.damping_case = parse_case(v);
  else if (key == "alpha1") d.alphas[0] = parse_double(v, key);
  else if (key == "alpha2") d.alphas[1] = parse_double(v, key);
  else if (key == "alpha3") d.alphas[2] = parse_double(v, key);
  else if (key == "alpha4") d.alphas[3] = parse_double(v, key);
  else if (key == "b0") d.b0 = parse_double(v, key);
  else if (key == "c0") d.c0 = parse_double(v, key);
  else if (key == "d0") d.d0 = parse_double(v, key);
  else if (key == "coupling_sign") d.coupling_sign = parse_double(v, key);
  else if (key == "undamped") d.undamped = parse_bool(v, key);
  else if (key == "profile.b") d.b_table = v.empty() ? std::nullopt : std::optional(StepProfile::parse(v));
  else if (key == "profile.c") d.c_table = v.empty() ? std::nullopt : std::optional(StepProfile::parse(v));
  else if (key == "profile.d") d.d_table = v.empty() ? std::nullopt : std::optional(StepProfile::parse(v));
  else if (key == "cross_section.source") cfg.cross_section = parse_source(v);
  else if (key == "cross_section.j") cfg.J = as_count(v, key);
  else if (key == "cross_section.file") cfg.cross_section_file = std::string(v);
  else if (key == "numerics.n") n.N = as_int(v, key);
  else if (key == "numerics.dt") n.dt = (v.empty() || lower(v) == "auto") ? std::nullopt : std::optional(parse_double(v, key));
  else if (key == "numerics.t") n.T = parse_double(v, key);
  else if (key == "numerics.sample_stride") n.sample_stride = as_int(v, key);
  else if (key == "numerics.energy_weight") n.energy_weight = parse_weight(v);
  else if (key == "numerics.align_interfaces") n.align_interfaces = parse_bool(v, key);
  else if (key == "init.recipe") in.recipe = parse_recipe(v);
  else if (key == "init.s") in.s = parse_double(v, key);
  else if (key == "init.amplitude") in.amplitude = parse_double(v, key);
  else if (key == "init.mode") in.mode = as_count(v, key);
  else if (key == "init.k") in.k = as_int(v, key);
  else if (key == "init.profiles") in.profiles = as_int(v, key);
  else if (key == "init.seed") in.seed = static_cast<std::uint64_t>(as_count(v, key));
  else if (key == "resolvent.lambda_min") r.lambda_min = parse_double(v, key);
  else if (key == "resolvent.lambda_max") r.lambda_max = parse_double(v, key);
  else if (key == "resolvent.points") r.points = as_int(v, key);
  else if (key == "resolvent.refine_k") r.refine_k = as_int(v, key);
  else if (key == "resolvent.refine_halfwidth") r.refine_halfwidth = parse_double(v, key);
  else if (key == "resolvent.tolerance") r.tolerance = parse_double(v, key);
  else if (key == "resolvent.dense_cap") r.dense_cap = as_count(v, key);
  else if (key == "fit.t0") cfg.fit.t0 = (v.empty() || lower(v) == "auto") ? std::nullopt : std::optional(parse_double(v, key));
  else if (key == "fit.t1") cfg.fit.t1 = (v.empty() || lower(v) == "auto") ? std::nullopt : std::optional(parse_double(v, key));
  else fail(ErrorKind::validation, "unknown configuration key '" + std::string(trim(key_in)) + "'");
}

void validate(const ExperimentConfig& cfg) {
  validate(cfg.damping);
  if (cfg.J < 1) fail(ErrorKind::validation, "cross_section.J must be >= 1");
  if (cfg.cross_section == CrossSection::user_file && cfg.cross_section_file.empty()) {
    fail(ErrorKind::validation, "cross_section.file is required for source user_file");
  }
  const auto& n = cfg.numerics;
  if (n.N < 2) fail(ErrorKind::validation, "numerics.N must be >= 2");
  if (!(n.T > 0.0)) fail(ErrorKind::validation, "numerics.T must be positive");
  if (n.dt && !(*n.dt > 0.0)) fail(ErrorKind::validation, "numerics.dt must be positive");
  if (n.sample_stride < 1) fail(ErrorKind::validation, "numerics.sample_stride must be >= 1");
  const auto& r = cfg.resolvent;
  if (r.points < 1) fail(ErrorKind::validation, "resolvent.points must be >= 1");
  if (r.refine_k < 0) fail(ErrorKind::validation, "resolvent.refine_k must be >= 0");
  if (r.refine_halfwidth < 0.0) fail(ErrorKind::validation, "resolvent.refine_halfwidth must be >= 0");
  if (!(r.tolerance > 0.0)) fail(ErrorKind::validation, "resolvent.tolerance must be positive");
  const auto& in = cfg.init;
  if (in.s < 0.0) fail(ErrorKind::validation, "init.s must be >= 0");
  if (in.profiles < 1) fail(ErrorKind::validation, "init.profiles must be >= 1");
  if (in.k < 1) fail(ErrorKind::validation, "init.k must be >= 1");
}

ExperimentConfig load_config(std::string_view text) {
  ExperimentConfig cfg;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto next = text.find('\n', pos);
    if (next == std::string_view::npos) next = text.size();
    std::string_view line = text.substr(pos, next - pos);
    pos = next + 1;
    ++line_no;
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(ErrorKind::validation, "line " + std::to_string(line_no) + ": malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(ErrorKind::validation, "line " + std::to_string(line_no) + ": expected key = value");
    std::string key(trim(line.substr(0, eq)));
    if (!section.empty()) key = section + "." + key;
    try {
      apply_setting(cfg, key, line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

std::string to_config_text(const ExperimentConfig& cfg) {
  std::ostringstream o;
  const auto& d = cfg.damping;
  o << "a = " << format_g17(d.a) << "\n";
  o << "case = " << to_string(d.damping_case) << "\n";
  for (int i = 0; i < 4; ++i) o << "alpha" << i + 1 << " = " << format_g17(d.alphas[i]) << "\n";
  o << "b0 = " << format_g17(d.b0) << "\n";
  o << "c0 = " << format_g17(d.c0) << "\n";
  o << "d0 = " << format_g17(d.d0) << "\n";
  o << "coupling_sign = " << format_g17(d.coupling_sign) << "\n";
  o << "undamped = " << (d.undamped ? "true" : "false") << "\n";
  if (d.b_table || d.c_table || d.d_table) {
    o << "\n[profile]\n";
    if (d.b_table) o << "b = \"" << d.b_table->to_string() << "\"\n";
    if (d.c_table) o << "c = \"" << d.c_table->to_string() << "\"\n";
    if (d.d_table) o << "d = \"" << d.d_table->to_string() << "\"\n";
  }
  o << "\n[cross_section]\n";
  o << "source = " << to_string(cfg.cross_section) << "\n";
  o << "J = " << cfg.J << "\n";
  if (!cfg.cross_section_file.empty()) o << "file = \"" << cfg.cross_section_file << "\"\n";
  const auto& n = cfg.numerics;
  o << "\n[numerics]\n";
  o << "N = " << n.N << "\n";
  o << "dt = " << (n.dt ? format_g17(*n.dt) : std::string("auto")) << "\n";
  o << "T = " << format_g17(n.T) << "\n";
  o << "sample_stride = " << n.sample_stride << "\n";
  o << "energy_weight = " << to_string(n.energy_weight) << "\n";
  o << "align_interfaces = " << (n.align_interfaces ? "true" : "false") << "\n";
  const auto& in = cfg.init;
  o << "\n[init]\n";
  o << "recipe = " << to_string(in.recipe) << "\n";
  o << "s = " << format_g17(in.s) << "\n";
  o << "amplitude = " << format_g17(in.amplitude) << "\n";
  o << "mode = " << in.mode << "\n";
  o << "k = " << in.k << "\n";
  o << "profiles = " << in.profiles << "\n";
  o << "seed = " << in.seed << "\n";
  const auto& r = cfg.resolvent;
  o << "\n[resolvent]\n";
  o << "lambda_min = " << format_g17(r.lambda_min) << "\n";
  o << "lambda_max = " << format_g17(r.lambda_max) << "\n";
  o << "points = " << r.points << "\n";
  o << "refine_k = " << r.refine_k << "\n";
  o << "refine_halfwidth = " << format_g17(r.refine_halfwidth) << "\n";
  o << "tolerance = " << format_g17(r.tolerance) << "\n";
  o << "dense_cap = " << r.dense_cap << "\n";
  o << "\n[fit]\n";
  o << "t0 = " << (cfg.fit.t0 ? format_g17(*cfg.fit.t0) : std::string("auto")) << "\n";
  o << "t1 = " << (cfg.fit.t1 ? format_g17(*cfg.fit.t1) : std::string("auto")) << "\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Presets (layouts of the illustrated geometries, supports read off the
// figures and rescaled to the unit axis)

namespace {

struct PresetText {
  std::string_view name;
  std::string_view text;
};

constexpr PresetText kPresets[] = {
    {"fig1_left",
     "a = 1\ncase = LCD1\nalpha1 = 0.2\nalpha2 = 0.4\nalpha3 = 0.6\nalpha4 = 0.8\n"
     "b0 = 1\nc0 = 1\nd0 = 0\n[cross_section]\nsource = interval\nJ = 16\n"},
    {"fig1_right",
     "a = 1\ncase = LCD2\nalpha1 = 0.15\nalpha2 = 0.4\nalpha3 = 0.6\nalpha4 = 0.7\n"
     "b0 = 1\nc0 = 1\nd0 = 1\n[cross_section]\nsource = interval\nJ = 16\n"},
    {"fig2",
     "a = 1\ncase = LCD1\nalpha1 = 0.16666666666666666\nalpha2 = 0.33333333333333331\n"
     "alpha3 = 0.66666666666666663\nalpha4 = 0.83333333333333337\n"
     "b0 = 1\nc0 = 1\nd0 = 0\n[cross_section]\nsource = square\nJ = 16\n"},
    {"fig3",
     "a = 1\ncase = LCD1\nalpha1 = 0.1\nalpha2 = 0.3\nalpha3 = 0.7\nalpha4 = 0.9\n"
     "b0 = 1\nc0 = 1\nd0 = 0\n[cross_section]\nsource = square\nJ = 16\n"},
    {"undamped",
     "a = 1\ncase = LCD1\nalpha1 = 0.2\nalpha2 = 0.4\nalpha3 = 0.6\nalpha4 = 0.8\n"
     "b0 = 0\nc0 = 0\nd0 = 0\nundamped = true\n[cross_section]\nsource = interval\nJ = 16\n"},
};

}  // namespace

ExperimentConfig preset(std::string_view name) {
  std::string key = lower(trim(name));
  std::replace(key.begin(), key.end(), '-', '_');
  for (const auto& p : kPresets) {
    if (p.name == key) return load_config(p.text);
  }
  fail(ErrorKind::validation, "unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : kPresets) out.emplace_back(p.name);
  return out;
}

}  // namespace cylwave
