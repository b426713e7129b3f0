#ifndef EULERKIN_PIPELINE_HPP
#define EULERKIN_PIPELINE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "eulerkin/config.hpp"

namespace eulerkin {

struct CheckResult {
  std::string name;
  std::string kind;
  bool pass = true;
  nlohmann::json metrics;
};

struct PipelineResult {
  int exit_code = 0;  ///< 0 ok, 1 check failure
  std::filesystem::path dir;
  nlohmann::json summary;
  std::vector<CheckResult> checks;
};

/// Simulate, persist the record, execute every requested checker, and write
/// summary.json (timestamp-free, byte-stable for a fixed config and seed).
/// `only_kind` non-empty restricts execution to diagnostics of that kind.
PipelineResult run_pipeline(const RunConfig& cfg, const std::string& out_dir,
                            bool dry_run = false, const std::string& only_kind = "");

struct SweepResult {
  int exit_code = 0;
  nlohmann::json aggregate;
};

/// Independent pipeline runs over an axis parameter, an aggregate CSV of
/// (value, metric) pairs, and an optional log-log slope fit of one metric.
SweepResult sweep(const RunConfig& base, const std::string& param,
                  const std::vector<double>& values, const std::string& out_dir, int threads,
                  const std::string& fit_metric = "");

/// Set a numeric parameter by dotted path (grid.n_cells, scheme.t_end,
/// scheme.cfl, initial.amplitude, initial.seed, dissipation.v_nodes).
void apply_override(RunConfig& cfg, const std::string& param, double value);

}  // namespace eulerkin

#endif
