#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "eulerkin/io.hpp"
#include "eulerkin/pipeline.hpp"

using namespace eulerkin;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("eulerkin_pl_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kShockConfig = R"(
[grid]
n_cells = 400
boundary = "outflow"

[scheme]
t_end = 0.15
snapshot_stride = 4

[dissipation]
v_nodes = 16
t_slabs = 16

[initial]
preset = "riemann"
rho_left = 1.0
m_left = 0.0
rho_right = 2.0
m_right = -1.0801234497346435

[[diagnostic]]
kind = "trace"
name = "shock_trace"
x0 = 0.5
speed = -1.0801234497346435
band = 0.02

[[diagnostic]]
kind = "rh"
name = "shock_rh"
x0 = 0.5
speed = -1.0801234497346435
band = 0.02
expect = "shock"

[[diagnostic]]
kind = "mu"
name = "mu"
v_bins = 16
)";

}  // namespace

TEST_CASE("riemann preset pipeline produces records and reports") {
  TempDir tmp;
  const auto cfg = parse_config_text(kShockConfig);
  const auto res = run_pipeline(cfg, (tmp.path / "run").string());
  CHECK(res.exit_code == 0);
  REQUIRE(res.checks.size() == 3);
  for (const auto& c : res.checks) CHECK(c.pass);
  CHECK(fs::exists(tmp.path / "run" / "manifest.json"));
  CHECK(fs::exists(tmp.path / "run" / "summary.json"));
  CHECK(fs::exists(tmp.path / "run" / "shock_trace_ladder.csv"));
  CHECK(fs::exists(tmp.path / "run" / "shock_rh_report.json"));
  CHECK(fs::exists(tmp.path / "run" / "mu.csv"));
  const auto summary = read_json(tmp.path / "run" / "summary.json");
  CHECK(summary["all_pass"] == true);
  CHECK(summary["checks"].size() == 3);
  // The rh check actually saw the shock.
  for (const auto& c : summary["checks"])
    if (c["kind"] == "rh") CHECK(c["metrics"]["label"] == "SHOCK");
}

TEST_CASE("dry run echoes the config without artifacts") {
  TempDir tmp;
  const auto cfg = parse_config_text(kShockConfig);
  const auto res = run_pipeline(cfg, (tmp.path / "dry").string(), true);
  CHECK(res.exit_code == 0);
  CHECK(!fs::exists(tmp.path / "dry" / "manifest.json"));
  CHECK(res.summary["config"]["grid"]["n_cells"] == 400);
}

TEST_CASE("determinism: repeated runs give byte-identical summaries") {
  TempDir tmp;
  const auto cfg = parse_config_text(kShockConfig);
  run_pipeline(cfg, (tmp.path / "a").string());
  run_pipeline(cfg, (tmp.path / "b").string());
  CHECK(slurp(tmp.path / "a" / "summary.json") == slurp(tmp.path / "b" / "summary.json"));
  CHECK(slurp(tmp.path / "a" / "manifest.json") == slurp(tmp.path / "b" / "manifest.json"));
}

TEST_CASE("only_kind restricts execution") {
  TempDir tmp;
  const auto cfg = parse_config_text(kShockConfig);
  const auto res = run_pipeline(cfg, (tmp.path / "only").string(), false, "trace");
  REQUIRE(res.checks.size() == 1);
  CHECK(res.checks[0].kind == "trace");
}

TEST_CASE("random preset batch of seeds all complete") {
  TempDir tmp;
  int failures = 0;
  for (unsigned seed = 0; seed < 10; ++seed) {
    auto cfg = parse_config_text(R"(
[grid]
n_cells = 200

[scheme]
t_end = 0.1
snapshot_stride = 8

[initial]
preset = "random_linfty"
pieces = 6
rho_min = 0.4
rho_max = 2.0
u_max = 0.15
)");
    cfg.initial.seed = seed;
    const auto res = run_pipeline(cfg, (tmp.path / ("s" + std::to_string(seed))).string());
    failures += res.exit_code != 0;
    const auto summary = read_json(tmp.path / ("s" + std::to_string(seed)) / "summary.json");
    CHECK(summary["record"]["mass_drift"].get<double>() <= 1e-10);
    CHECK(summary["record"]["invariant_min_lambda1_worst_drop"].get<double>() <= 1e-10);
    CHECK(summary["record"]["invariant_max_lambda2_worst_rise"].get<double>() <= 1e-10);
  }
  CHECK(failures == 0);
}

TEST_CASE("sweep over n_cells emits aggregate with slope") {
  TempDir tmp;
  auto cfg = parse_config_text(R"(
[grid]
n_cells = 100

[scheme]
t_end = 0.2
snapshot_stride = 16

[initial]
preset = "smooth_sine"
amplitude = 0.1
)");
  const auto res = sweep(cfg, "grid.n_cells", {100, 200, 400}, (tmp.path / "sw").string(), 2,
                         "record.total_collapse_dissipation");
  CHECK(res.exit_code == 0);
  CHECK(fs::exists(tmp.path / "sw" / "aggregate.csv"));
  CHECK(fs::exists(tmp.path / "sw" / "run_0" / "summary.json"));
  REQUIRE(res.aggregate.contains("loglog_slope"));
  // Dissipation scales like 1/n: slope vs n is about -1.
  const double slope = res.aggregate["loglog_slope"].get<double>();
  CHECK(slope <= -0.8);
  CHECK(slope >= -1.3);
  CHECK_THROWS_AS(sweep(cfg, "grid.n_cells", {}, (tmp.path / "sw2").string(), 1, ""), ConfigError);
  CHECK_THROWS_AS(sweep(cfg, "grid.bogus", {1.0}, (tmp.path / "sw3").string(), 1, ""),
                  ConfigError);
}

TEST_CASE("all emitted csv artifacts re-read through the readers") {
  TempDir tmp;
  const auto cfg = parse_config_text(kShockConfig);
  const auto res = run_pipeline(cfg, (tmp.path / "run").string());
  REQUIRE(res.exit_code == 0);
  int n_csv = 0;
  for (const auto& entry : fs::recursive_directory_iterator(tmp.path / "run")) {
    if (entry.path().extension() == ".csv") {
      const auto t = read_table_csv(entry.path());
      CHECK(!t.header.empty());
      ++n_csv;
    }
  }
  CHECK(n_csv >= 5);
}
