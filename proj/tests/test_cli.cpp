// Filesystem contract, exit codes and reproducibility of the command line.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "doctest.h"

#include "cli.hpp"
#include "cylwave/config.hpp"
#include "cylwave/spectral.hpp"

namespace fs = std::filesystem;
using namespace cylwave;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
  fs::path dir;  // run directory announced on stdout
};

struct Scratch {
  fs::path root;
  Scratch() {
    root = fs::temp_directory_path() / ("cylwave_cli_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Scratch() { fs::remove_all(root); }
};

Result invoke(std::vector<std::string> args, const fs::path& out_root) {
  args.push_back("--out");
  args.push_back(out_root.string());
  args.push_back("--threads");
  args.push_back("1");
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  const std::string tag = "run directory: ";
  if (const auto p = r.out.find(tag); p != std::string::npos) {
    r.dir = r.out.substr(p + tag.size(), r.out.find('\n', p) - p - tag.size());
  }
  return r;
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::size_t data_rows(const fs::path& csv) {
  std::ifstream f(csv);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(f, line)) ++rows;
  return rows - 1;
}

const std::vector<std::string> kSmallSim = {"--set", "cross_section.J=4", "--set", "numerics.N=24",
                                            "--set", "numerics.T=40",     "--set", "numerics.dt=0.02"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("simulate on fig1-left switched to LCD2 writes trace, fit and manifest") {
  Scratch s;
  const auto r = invoke(with({"simulate", "--preset", "fig1-left", "--set", "case=LCD2", "--set", "d0=1"}, kSmallSim),
                        s.root);
  CHECK((r.code == cli::kExitOk || r.code == cli::kExitThreshold));
  REQUIRE(!r.dir.empty());
  CHECK(fs::exists(r.dir / "trace.csv"));
  CHECK(fs::exists(r.dir / "fit.txt"));
  CHECK(fs::exists(r.dir / "fit.kv"));
  CHECK(fs::exists(r.dir / "manifest.txt"));
  const auto manifest = slurp(r.dir / "manifest.txt");
  for (const char* field : {"subcommand = simulate", "config = preset:fig1-left", "seed = ", "override = case=LCD2",
                            "tool_version = ", "timestamp = ", "output_directory = "}) {
    CHECK(manifest.find(field) != std::string::npos);
  }
  CHECK(slurp(r.dir / "trace.csv").rfind("t,E,Q\n", 0) == 0);
  CHECK(slurp(r.dir / "fit.kv").find("kappa_predicted=1\n") != std::string::npos);
  CHECK((r.code == cli::kExitOk) == (slurp(r.dir / "fit.kv").find("\npass=true\n") != std::string::npos));
}

TEST_CASE("zero initial data is an error") {
  Scratch s;
  const auto r = invoke(with({"simulate", "--preset", "fig1-right", "--set", "init.recipe=zero"}, kSmallSim), s.root);
  CHECK(r.code == cli::kExitError);
  CHECK(r.err.find("zero-energy window") != std::string::npos);
  // The manifest predates the failure.
  CHECK(fs::exists(r.dir / "manifest.txt"));
}

TEST_CASE("repeated runs with the same seed give byte-identical traces") {
  Scratch s;
  const auto args = with({"simulate", "--preset", "fig1-right", "--set", "init.recipe=random", "--seed", "42",
                          "--per-mode"},
                         kSmallSim);
  const auto a = invoke(args, s.root);
  const auto b = invoke(args, s.root);
  REQUIRE(a.dir != b.dir);
  CHECK(a.code == b.code);
  CHECK(slurp(a.dir / "trace.csv") == slurp(b.dir / "trace.csv"));
  CHECK(slurp(a.dir / "config.txt") == slurp(b.dir / "config.txt"));
  CHECK(slurp(a.dir / "manifest.txt").find("seed = 42\n") != std::string::npos);

  const auto other = invoke(with({"simulate", "--preset", "fig1-right", "--set", "init.recipe=random", "--seed", "43",
                                  "--per-mode"},
                                 kSmallSim),
                            s.root);
  CHECK(slurp(a.dir / "trace.csv") != slurp(other.dir / "trace.csv"));
}

TEST_CASE("the resolved config reproduces the run and is never modified") {
  Scratch s;
  const auto first = invoke(with({"simulate", "--preset", "fig1-right"}, kSmallSim), s.root);
  const fs::path copy = s.root / "input.cfg";
  fs::copy_file(first.dir / "config.txt", copy);
  const auto before = slurp(copy);
  const auto second = invoke({"simulate", "--config", copy.string()}, s.root);
  CHECK(slurp(copy) == before);
  CHECK(second.code == first.code);
  CHECK(slurp(first.dir / "trace.csv") == slurp(second.dir / "trace.csv"));
}

TEST_CASE("resolvent on the LCD2 preset writes one row per grid point") {
  Scratch s;
  const auto r = invoke({"resolvent", "--preset", "fig1-right", "--set", "numerics.N=64"}, s.root);
  CHECK(r.code == cli::kExitOk);
  const auto cfg = preset("fig1_right");
  const auto grid = resolvent_grid(cfg.resolvent, cfg.spectrum(), cfg.damping.a);
  CHECK(grid.size() > 64);
  CHECK(data_rows(r.dir / "sweep.csv") == grid.size());
  CHECK(slurp(r.dir / "sweep.csv").rfind("lambda,norm,argmax_mode,sigma_min\n", 0) == 0);
  CHECK(fs::exists(r.dir / "growth.txt"));
  CHECK(fs::exists(r.dir / "growth.kv"));
}

TEST_CASE("reversed lambda range is an empty grid") {
  Scratch s;
  const auto r = invoke({"resolvent", "--preset", "fig1-right", "--set", "resolvent.lambda_min=200", "--set",
                         "resolvent.lambda_max=10"},
                        s.root);
  CHECK(r.code == cli::kExitError);
  CHECK(r.err.find("empty grid") != std::string::npos);
}

TEST_CASE("synthetic lambda^2 samples report p = 2.000") {
  Scratch s;
  const auto r = invoke({"resolvent", "--preset", "fig1-right", "--synthetic", "2"}, s.root);
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("p = 2.000") != std::string::npos);

  // Under LCD1 with a = 1 the limit is 4.3.
  const auto over = invoke({"resolvent", "--preset", "fig1-left", "--synthetic", "4.5"}, s.root);
  CHECK(over.code == cli::kExitThreshold);
}

TEST_CASE("spectrum subcommand") {
  Scratch s;
  SUBCASE("undamped preset is flagged conservative") {
    const auto r = invoke({"spectrum", "--preset", "undamped", "--set", "cross_section.J=4", "--set", "numerics.N=32"},
                          s.root);
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("conservative") != std::string::npos);
    CHECK(slurp(r.dir / "spectrum.txt").find("conservative=true") != std::string::npos);
  }
  SUBCASE("LCD1 preset has max Re < 0") {
    const auto r = invoke({"spectrum", "--preset", "fig1-left", "--set", "cross_section.J=4", "--set", "numerics.N=32"},
                          s.root);
    CHECK(r.code == cli::kExitOk);
    CHECK(data_rows(r.dir / "spectrum.csv") == 4u * 4u * 32u);
    CHECK(slurp(r.dir / "spectrum.txt").find("conservative=false") != std::string::npos);
  }
  SUBCASE("J = 0 is rejected") {
    const auto r = invoke({"spectrum", "--preset", "fig1-left", "--set", "cross_section.J=0"}, s.root);
    CHECK(r.code == cli::kExitError);
    CHECK(r.dir.empty());
  }
}

TEST_CASE("usage errors exit with 1") {
  Scratch s;
  CHECK(invoke({}, s.root).code == cli::kExitError);
  CHECK(invoke({"simulate"}, s.root).code == cli::kExitError);
  CHECK(invoke({"simulate", "--preset", "fig2", "--config", "x.cfg"}, s.root).code == cli::kExitError);
  CHECK(invoke({"simulate", "--preset", "fig2", "--set", "numerics.N"}, s.root).code == cli::kExitError);
  CHECK(invoke({"simulate", "--preset", "nope"}, s.root).code == cli::kExitError);
  CHECK(invoke({"simulate", "--config", (s.root / "missing.cfg").string()}, s.root).code == cli::kExitError);
  CHECK(invoke({"frobnicate"}, s.root).code == cli::kExitError);
}

TEST_CASE("help exits with 0") {
  std::ostringstream out;
  std::ostringstream err;
  CHECK(cli::run({"--help"}, out, err) == cli::kExitOk);
  CHECK(out.str().find("simulate") != std::string::npos);
}

TEST_CASE("CYLWAVE_THREADS is the fallback for --threads") {
  Scratch s;
  ::setenv("CYLWAVE_THREADS", "3", 1);
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run({"spectrum", "--preset", "fig1-left", "--set", "cross_section.J=2", "--set",
                             "numerics.N=16", "--out", s.root.string()},
                            out, err);
  ::unsetenv("CYLWAVE_THREADS");
  CHECK(code == cli::kExitOk);
  bool found = false;
  for (const auto& entry : fs::recursive_directory_iterator(s.root)) {
    if (entry.path().filename() == "manifest.txt") found = slurp(entry.path()).find("threads = 3\n") != std::string::npos;
  }
  CHECK(found);
}
