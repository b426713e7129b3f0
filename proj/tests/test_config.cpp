#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eulerkin/config.hpp"

using namespace eulerkin;

TEST_CASE("minimal config fills defaults") {
  const auto cfg = parse_config_text("");
  CHECK(cfg.scheme.cfl == doctest::Approx(0.5));
  CHECK(cfg.grid.boundary == Boundary::periodic);
  CHECK(cfg.grid.n_cells == 100);
  CHECK(cfg.initial.id == "riemann");
  CHECK(cfg.initial.split == doctest::Approx(0.5));
  CHECK(cfg.threads == 1);
}

TEST_CASE("full config round trip") {
  const std::string text = R"(
# a run
[grid]
x_min = 0.0
x_max = 2.0
n_cells = 400
boundary = "outflow"

[scheme]
id = "kinetic"
cfl = 0.4         # conservative
t_end = 0.3
snapshot_stride = 4

[dissipation]
v_nodes = 32

[initial]
preset = "riemann"
rho_left = 1.0
m_left = 0.0
rho_right = 2.0
m_right = -1.0801234497346435

[output]
directory = "artifacts"

[run]
seed = 42
threads = 2

[[diagnostic]]
kind = "trace"
name = "shock_trace"
x0 = 1.0
speed = -1.0801234497346435
band = 0.016

[[diagnostic]]
kind = "rh"
x0 = 1.0
speed = -1.0801234497346435
expect = "shock"
eps_list = [0.016, 0.032]
)";
  const auto cfg = parse_config_text(text);
  CHECK(cfg.grid.n_cells == 400);
  CHECK(cfg.grid.boundary == Boundary::outflow);
  CHECK(cfg.scheme.cfl == doctest::Approx(0.4));
  CHECK(cfg.scheme.dissipation.v_nodes == 32);
  CHECK(cfg.initial.right.m == doctest::Approx(-1.0801234497346435));
  CHECK(cfg.output_dir == "artifacts");
  CHECK(cfg.seed == 42);
  REQUIRE(cfg.diagnostics.size() == 2);
  CHECK(cfg.diagnostics[0].name == "shock_trace");
  CHECK(cfg.diagnostics[1].kind == "rh");
  CHECK(cfg.diagnostics[1].params.find("eps_list")->as_number_array("x").size() == 2);
}

TEST_CASE("cfl out of range names the bound") {
  try {
    parse_config_text("[scheme]\ncfl = 1.5\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("(0, 1]") != std::string::npos);
  }
}

TEST_CASE("unknown keys are rejected with a suggestion") {
  try {
    parse_config_text("[scheme]\ncflx = 0.5\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("cflx") != std::string::npos);
    CHECK(msg.find("did you mean 'cfl'") != std::string::npos);
  }
}

TEST_CASE("type mismatches and malformed lines carry line context") {
  try {
    parse_config_text("[grid]\nn_cells = \"many\"\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("[grid]\nn_cells 100\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[grid\nn_cells = 100\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[scheme]\nid = \"weird\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[initial]\npreset = \"unknown\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[[diagnostic]]\nkind = \"nope\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[grid]\nn_cells = 100\nn_cells = 200\n"), ConfigError);
}

TEST_CASE("diagnostic schemas reject stray keys per kind") {
  CHECK_THROWS_AS(parse_config_text("[[diagnostic]]\nkind = \"trace\"\nv_bins = 4\n"),
                  ConfigError);
  const auto ok = parse_config_text("[[diagnostic]]\nkind = \"mu\"\nv_bins = 4\n");
  CHECK(ok.diagnostics.size() == 1);
}

TEST_CASE("config echo is deterministic") {
  const std::string text = "[grid]\nn_cells = 123\n";
  const auto a = config_echo(parse_config_text(text));
  const auto b = config_echo(parse_config_text(text));
  CHECK(a == b);
  CHECK(a.find("123") != std::string::npos);
}
