// Configuration parsing, validation, damping layout and cross-section spectra.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "doctest.h"

#include "cylwave/config.hpp"
#include "cylwave/error.hpp"

using namespace cylwave;

namespace {

const char* kValid =
    "a = 1\ncase = LCD1\nalpha1 = 0.1\nalpha2 = 0.3\nalpha3 = 0.5\nalpha4 = 0.7\nb0 = 1\nc0 = 1\n";

ErrorKind kind_of(const std::string& text) {
  try {
    load_config(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::usage;
}

std::string message_of(const std::string& text) {
  try {
    load_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("valid plateau config loads") {
  const auto cfg = load_config(kValid);
  CHECK(cfg.damping.a == 1.0);
  CHECK(cfg.damping.damping_case == DampingCase::lcd1);
  CHECK(cfg.damping.alphas[2] == 0.5);
}

TEST_CASE("alpha ordering violation names the inequality") {
  const std::string text =
      "a = 1\ncase = LCD1\nalpha1 = 0.3\nalpha2 = 0.1\nalpha3 = 0.5\nalpha4 = 0.7\nb0 = 1\nc0 = 1\n";
  CHECK(kind_of(text) == ErrorKind::validation);
  CHECK(message_of(text).find("alpha1 < alpha2 violated") != std::string::npos);
}

TEST_CASE("LCD1 with positive d0 is an inconsistent case") {
  CHECK(kind_of(std::string(kValid) + "d0 = 0.5\n") == ErrorKind::inconsistent_case);
}

TEST_CASE("nonpositive a is a domain error") {
  CHECK(kind_of(std::string(kValid) + "a = 0\n") == ErrorKind::domain);
  CHECK(kind_of(std::string(kValid) + "a = -2\n") == ErrorKind::domain);
}

TEST_CASE("LCD2 requires d0 and b0, c0 must be positive") {
  CHECK_THROWS_AS(load_config(std::string(kValid) + "case = LCD2\n"), Error);
  CHECK_THROWS_AS(load_config(std::string(kValid) + "b0 = 0\n"), Error);
  CHECK_THROWS_AS(load_config(std::string(kValid) + "c0 = 0\n"), Error);
  CHECK_NOTHROW(load_config(std::string(kValid) + "case = LCD2\nd0 = 2\n"));
}

TEST_CASE("damping_at uses half-open plateaus") {
  const auto cfg = load_config(kValid);
  const auto v = damping_at(cfg.damping, 0.4);
  CHECK(v.b == 1.0);
  CHECK(v.c == 1.0);
  CHECK(v.d == 0.0);
  const auto outside = damping_at(cfg.damping, 0.05);
  CHECK(outside.b == 0.0);
  CHECK(outside.c == 0.0);
  CHECK(outside.d == 0.0);
  // Left edges belong to the plateau, right edges do not.
  CHECK(damping_at(cfg.damping, 0.1).b == 1.0);
  CHECK(damping_at(cfg.damping, 0.7).b == 0.0);
  CHECK(damping_at(cfg.damping, 0.3).c == 1.0);
  CHECK(damping_at(cfg.damping, 0.5).c == 0.0);

  const auto lcd2 = load_config(std::string(kValid) + "case = LCD2\nd0 = 2\n");
  const auto w = damping_at(lcd2.damping, 0.2);
  CHECK(w.b == 1.0);
  CHECK(w.c == 0.0);
  CHECK(w.d == 2.0);

  CHECK_THROWS_AS(damping_at(cfg.damping, -0.1), Error);
  CHECK_THROWS_AS(damping_at(cfg.damping, 1.5), Error);
}

TEST_CASE("random valid configs satisfy the sign and bound constraints everywhere") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, 4> al{u(rng), u(rng), u(rng), u(rng)};
    std::sort(al.begin(), al.end());
    if (al[0] == al[1] || al[1] == al[2] || al[2] == al[3]) continue;
    DampingConfig c;
    c.alphas = al;
    c.a = 0.1 + 3.0 * u(rng);
    c.b0 = 0.1 + u(rng);
    c.c0 = 0.1 + u(rng);
    c.coupling_sign = u(rng) < 0.5 ? 1.0 : -1.0;
    const bool lcd2 = u(rng) < 0.5;
    c.damping_case = lcd2 ? DampingCase::lcd2 : DampingCase::lcd1;
    c.d0 = lcd2 ? 0.1 + u(rng) : 0.0;
    REQUIRE_NOTHROW(validate(c));
    for (int s = 0; s <= 200; ++s) {
      const double x = s / 200.0;
      const auto v = damping_at(c, x);
      const bool in_b = x > al[0] && x < al[3];
      const bool in_c = x > al[1] && x < al[2];
      CHECK(v.b >= 0.0);
      if (in_b) CHECK(v.b >= c.b0);
      if (in_c) CHECK(std::abs(v.c) >= c.c0);
      if (!(x >= al[1] && x <= al[2])) CHECK(v.c == 0.0);
      if (!lcd2) CHECK(v.d == 0.0);
      if (lcd2 && in_b) CHECK(v.d >= c.d0);
      CHECK(v.d >= 0.0);
    }
  }
}

TEST_CASE("tabulated profiles override plateaus and are validated") {
  auto cfg = load_config(std::string(kValid) + "[profile]\nb = \"0:0.5, 0.1:2, 0.7:0.25\"\n");
  CHECK(damping_at(cfg.damping, 0.05).b == 0.5);
  CHECK(damping_at(cfg.damping, 0.4).b == 2.0);
  CHECK(damping_at(cfg.damping, 0.9).b == 0.25);
  // Below b0 inside the damping region.
  CHECK_THROWS_AS(load_config(std::string(kValid) + "[profile]\nb = \"0:0, 0.1:0.5\"\n"), Error);
  // Coupling leaking outside (alpha2, alpha3).
  CHECK_THROWS_AS(load_config(std::string(kValid) + "[profile]\nc = \"0:1\"\n"), Error);
}

TEST_CASE("interval spectrum is j pi") {
  const auto s = cross_section_eigenvalues(CrossSection::interval, 3);
  REQUIRE(s.size() == 3);
  CHECK(s.mus[0] == doctest::Approx(3.14159).epsilon(1e-5));
  CHECK(s.mus[1] == doctest::Approx(6.28319).epsilon(1e-5));
  CHECK(s.mus[2] == doctest::Approx(9.42478).epsilon(1e-5));
  const auto big = cross_section_eigenvalues(CrossSection::interval, 10000);
  for (std::size_t j = 0; j < big.size(); ++j) {
    CHECK(big.mus[j] == static_cast<double>(j + 1) * std::numbers::pi);
  }
}

TEST_CASE("square spectrum matches brute-force enumeration") {
  std::vector<double> brute;
  for (int p = 1; p <= 40; ++p)
    for (int q = 1; q <= 40; ++q) brute.push_back(std::numbers::pi * std::sqrt(double(p * p + q * q)));
  std::sort(brute.begin(), brute.end());
  const auto s = cross_section_eigenvalues(CrossSection::square, 200);
  for (std::size_t j = 0; j < s.size(); ++j) CHECK(s.mus[j] == doctest::Approx(brute[j]).epsilon(1e-15));
  const auto three = cross_section_eigenvalues(CrossSection::square, 3);
  CHECK(three.mus[0] == doctest::Approx(4.44288).epsilon(1e-5));
  CHECK(three.mus[1] == doctest::Approx(7.02481).epsilon(1e-5));
  CHECK(three.mus[2] == doctest::Approx(7.02481).epsilon(1e-5));
  for (std::size_t j = 1; j < s.size(); ++j) CHECK(s.mus[j - 1] <= s.mus[j]);
}

TEST_CASE("spectrum errors") {
  CHECK_THROWS_AS(cross_section_eigenvalues(CrossSection::interval, 0), Error);
  CHECK_THROWS_AS(cross_section_from_values({3.0, 1.0}), Error);
  CHECK_THROWS_AS(cross_section_from_values({-1.0}), Error);
  CHECK_NOTHROW(cross_section_from_values({1.0, 1.0, 2.0}));
}

TEST_CASE("strict keys and sections") {
  CHECK_THROWS_AS(load_config(std::string(kValid) + "bogus = 1\n"), Error);
  CHECK_THROWS_AS(load_config(std::string(kValid) + "[numerics]\nNN = 3\n"), Error);
  const auto cfg = load_config(std::string(kValid) + "[numerics]\nN = 32\ndt = 0.01 # comment\n"
                                                     "[resolvent]\nlambda_min = 5\n");
  CHECK(cfg.numerics.N == 32);
  CHECK(*cfg.numerics.dt == 0.01);
  CHECK(cfg.resolvent.lambda_min == 5.0);
}

TEST_CASE("canonical text round-trips") {
  for (const auto& name : preset_names()) {
    auto cfg = preset(name);
    cfg.numerics.dt = 0.0123;
    cfg.fit.t0 = 3.5;
    cfg.init.seed = 99;
    const auto text = to_config_text(cfg);
    const auto back = load_config(text);
    CHECK(to_config_text(back) == text);
    CHECK(back.damping.alphas == cfg.damping.alphas);
    CHECK(back.damping.undamped == cfg.damping.undamped);
  }
}

TEST_CASE("presets") {
  CHECK(preset("fig1-left").damping.damping_case == DampingCase::lcd1);
  CHECK(preset("fig1_right").damping.damping_case == DampingCase::lcd2);
  CHECK(preset("fig2").cross_section == CrossSection::square);
  CHECK(preset("undamped").damping.undamped);
  CHECK_THROWS_AS(preset("nope"), Error);
}
