#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "eulerkin/io.hpp"
#include "eulerkin/pipeline.hpp"
#include "eulerkin/riemann.hpp"

using namespace eulerkin;

namespace {

int exit_usage = 2;
int exit_internal = 3;

struct CommonArgs {
  std::string config;
  std::string out;
  bool dry_run = false;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
  auto* c = cmd->add_option("--config", args.config, "run configuration (TOML)")
                ->envname("EULERKIN_CONFIG");
  if (config_required) c->required();
  cmd->add_option("--out", args.out, "output directory (overrides config)")
      ->envname("EULERKIN_OUT");
  cmd->add_flag("--dry-run", args.dry_run, "echo the effective config, skip simulation");
  cmd->add_option("--threads", args.threads, "worker threads for sweeps")
      ->envname("EULERKIN_THREADS");
}

RunConfig load(const CommonArgs& args) {
  RunConfig cfg = parse_config(args.config);
  if (args.threads > 0) cfg.threads = args.threads;
  return cfg;
}

int run_filtered(const CommonArgs& args, const std::string& kind) {
  const RunConfig cfg = load(args);
  if (!kind.empty()) {
    bool found = false;
    for (const auto& d : cfg.diagnostics) found = found || d.kind == kind;
    if (!found) {
      std::cerr << "error: config has no [[diagnostic]] entry of kind '" << kind << "'\n";
      return exit_usage;
    }
  }
  const auto res = run_pipeline(cfg, args.out.empty() ? cfg.output_dir : args.out, args.dry_run,
                                kind);
  if (args.dry_run) {
    std::cout << res.summary["config"].dump(2) << "\n";
    return 0;
  }
  for (const auto& c : res.checks)
    std::printf("[%s] %s (%s)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.kind.c_str());
  std::printf("artifacts: %s\n", res.dir.string().c_str());
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eulerkin: a gamma = 3 isentropic Euler laboratory built on the exact kinetic "
               "chi-interval representation"};
  app.require_subcommand(1);

  CommonArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "run the solver and every configured diagnostic");
  add_common(sim, sim_args);

  // Exact Riemann solution sampler.
  struct {
    double rho_l = 1.0, m_l = 0.0, rho_r = 1.0, m_r = 0.0;
    double time = 0.2, x_min = 0.0, x_max = 1.0, split = 0.5;
    int n_cells = 1000;
    std::string out = "out";
  } rp;
  auto* rie = app.add_subcommand("riemann", "sample the exact Riemann solution to snapshot CSV");
  rie->add_option("--rho-left", rp.rho_l);
  rie->add_option("--m-left", rp.m_l);
  rie->add_option("--rho-right", rp.rho_r);
  rie->add_option("--m-right", rp.m_r);
  rie->add_option("--time", rp.time, "sampling time (> 0)");
  rie->add_option("--n-cells", rp.n_cells);
  rie->add_option("--x-min", rp.x_min);
  rie->add_option("--x-max", rp.x_max);
  rie->add_option("--split", rp.split, "initial jump position");
  rie->add_option("--out", rp.out)->envname("EULERKIN_OUT");

  CommonArgs trace_args, rh_args, dg_args, sc_args, ch_args;
  add_common(app.add_subcommand("trace", "run only the trace diagnostics"), trace_args);
  add_common(app.add_subcommand("rh", "run only the Rankine-Hugoniot dichotomy diagnostics"),
             rh_args);
  add_common(app.add_subcommand("degiorgi", "run only the one-sided iteration monitors"), dg_args);
  add_common(app.add_subcommand("semicont", "run only the semicontinuity checkers"), sc_args);
  add_common(app.add_subcommand("characteristic", "run only the characteristic solvers"), ch_args);

  CommonArgs sweep_args;
  std::string sweep_param, sweep_values, sweep_fit;
  auto* sw = app.add_subcommand("sweep", "run a parameter sweep with an aggregate report");
  add_common(sw, sweep_args);
  sw->add_option("--param", sweep_param, "dotted parameter path, e.g. grid.n_cells")->required();
  sw->add_option("--values", sweep_values, "comma-separated numeric axis")->required();
  sw->add_option("--fit", sweep_fit, "aggregate column for a log-log slope fit");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return run_filtered(sim_args, "");
    if (app.got_subcommand("trace")) return run_filtered(trace_args, "trace");
    if (app.got_subcommand("rh")) return run_filtered(rh_args, "rh");
    if (app.got_subcommand("degiorgi")) return run_filtered(dg_args, "degiorgi");
    if (app.got_subcommand("semicont")) return run_filtered(sc_args, "semicont");
    if (app.got_subcommand("characteristic")) return run_filtered(ch_args, "characteristic");

    if (rie->parsed()) {
      if (!(rp.time > 0.0)) {
        std::cerr << "error: --time must be positive\n";
        return exit_usage;
      }
      const auto sol = solve_riemann({rp.rho_l, rp.m_l}, {rp.rho_r, rp.m_r});
      Grid1D grid(rp.x_min, rp.x_max, rp.n_cells, Boundary::outflow);
      ConservedField f(grid.n_cells);
      for (int i = 0; i < grid.n_cells; ++i) {
        const auto u = sample_riemann(sol, (grid.center(i) - rp.split) / rp.time);
        f.rho[i] = u.rho;
        f.m[i] = u.m;
      }
      std::filesystem::create_directories(rp.out);
      const auto path = std::filesystem::path(rp.out) / "riemann_exact.csv";
      write_snapshot_csv(path, f, grid);
      std::printf("vacuum: %s, waves:", sol.vacuum ? "yes" : "no");
      for (const auto& w : sol.waves) {
        const char* kind = w.kind == WaveKind::shock
                               ? "shock"
                               : (w.kind == WaveKind::rarefaction ? "rarefaction" : "none");
        std::printf(" %d-%s[%.6g,%.6g]", w.family, kind, w.speed_lo, w.speed_hi);
      }
      std::printf("\nwrote %s\n", path.string().c_str());
      return 0;
    }

    if (sw->parsed()) {
      const RunConfig cfg = load(sweep_args);
      std::vector<double> values;
      std::stringstream ss(sweep_values);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stod(item));
      }
      if (values.empty()) {
        std::cerr << "error: --values is empty\n";
        return exit_usage;
      }
      const auto res = sweep(cfg, sweep_param, values,
                             sweep_args.out.empty() ? cfg.output_dir : sweep_args.out,
                             cfg.threads, sweep_fit);
      std::cout << res.aggregate.dump(2) << "\n";
      return res.exit_code;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
  return exit_usage;
}
