#ifndef EULERKIN_CONFIG_HPP
#define EULERKIN_CONFIG_HPP

#include <string>
#include <vector>

#include "eulerkin/presets.hpp"
#include "eulerkin/solver.hpp"
#include "eulerkin/toml_lite.hpp"

namespace eulerkin {

/// One requested checker with its raw (already schema-checked) parameters.
struct DiagnosticSpec {
  std::string kind;  ///< trace | rh | degiorgi | semicont | characteristic | mu | tv_bound
  std::string name;  ///< output stem, unique per run
  toml::Value params;
};

struct RunConfig {
  Grid1D grid{0.0, 1.0, 100, Boundary::periodic};
  SchemeConfig scheme;
  PresetSpec initial;
  std::string output_dir = "out";
  unsigned seed = 0;
  int threads = 1;
  std::vector<DiagnosticSpec> diagnostics;
};

/// Parse + validate a config file. Unknown keys are rejected with a nearest-
/// key suggestion; type and range errors name the offending key and bound.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

/// Deterministic echo of the effective configuration (defaults filled).
std::string config_echo(const RunConfig& cfg);

}  // namespace eulerkin

#endif
