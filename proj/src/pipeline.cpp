#include "eulerkin/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <sstream>

#include "eulerkin/characteristics.hpp"
#include "eulerkin/degiorgi.hpp"
#include "eulerkin/entropy.hpp"
#include "eulerkin/io.hpp"
#include "eulerkin/semicontinuity.hpp"
#include "eulerkin/trace.hpp"

namespace eulerkin {

namespace fs = std::filesystem;

namespace {

LipschitzCurve curve_from_params(const SpaceTimeRecord& rec, const toml::Value& p,
                                 const std::string& where) {
  const double x0 = p.find("x0") ? p.find("x0")->as_number(where + ".x0")
                                 : 0.5 * (rec.grid.x_min + rec.grid.x_max);
  const double speed = p.find("speed") ? p.find("speed")->as_number(where + ".speed") : 0.0;
  return LipschitzCurve::line(rec, x0, speed);
}

TraceOptions trace_options(const toml::Value& p, const std::string& where) {
  TraceOptions o;
  if (const auto* v = p.find("band")) o.band = v->as_number(where + ".band");
  if (const auto* v = p.find("ladder_span")) o.ladder_span = v->as_number(where + ".ladder_span");
  if (const auto* v = p.find("verify_tol")) o.verify_tol = v->as_number(where + ".verify_tol");
  return o;
}

nlohmann::json trace_json(const TraceReport& tr) {
  nlohmann::json j;
  j["band"] = tr.band;
  j["verified"] = tr.verified;
  j["verify_tol"] = tr.verify_tol;
  j["k"] = tr.k;
  j["E"] = tr.E;
  j["uniform_E"] = tr.uniform_E;
  const auto up = tr.mean_plus();
  const auto um = tr.mean_minus();
  j["mean_u_plus"] = {up.rho, up.m};
  j["mean_u_minus"] = {um.rho, um.m};
  return j;
}

CheckResult run_trace(const fs::path& dir, const SpaceTimeRecord& rec,
                      const DiagnosticSpec& spec) {
  CheckResult res{spec.name, "trace"};
  const auto curve = curve_from_params(rec, spec.params, spec.name);
  const auto tr = extract_trace(rec, curve, TraceSide::both, trace_options(spec.params, spec.name));
  bool monotone = true;
  for (std::size_t i = 0; i + 1 < tr.E.size(); ++i)
    if (tr.E[i + 1] > tr.E[i] + 1e-12) monotone = false;
  res.pass = monotone;
  res.metrics = trace_json(tr);
  res.metrics["ladder_monotone"] = monotone;
  Table t;
  t.header = {"k", "E", "uniform_E"};
  for (std::size_t i = 0; i < tr.k.size(); ++i) t.rows.push_back({tr.k[i], tr.E[i], tr.uniform_E[i]});
  write_table_csv(dir / (spec.name + "_ladder.csv"), t);
  Table states;
  states.header = {"t", "rho_plus", "m_plus", "rho_minus", "m_minus"};
  for (std::size_t j = 0; j < tr.times.size(); ++j)
    states.rows.push_back({tr.times[j], tr.u_plus[j].rho, tr.u_plus[j].m, tr.u_minus[j].rho,
                           tr.u_minus[j].m});
  write_table_csv(dir / (spec.name + "_states.csv"), states);
  return res;
}

CheckResult run_rh(const fs::path& dir, const SpaceTimeRecord& rec, const DiagnosticSpec& spec) {
  CheckResult res{spec.name, "rh"};
  const auto& p = spec.params;
  const auto curve = curve_from_params(rec, p, spec.name);
  const auto tr = extract_trace(rec, curve, TraceSide::both, trace_options(p, spec.name));
  DichotomyOptions dopt;
  if (const auto* v = p.find("cont_tol")) dopt.cont_tol = v->as_number(spec.name + ".cont_tol");
  if (const auto* v = p.find("eps_list")) dopt.eps_list = v->as_number_array(spec.name + ".eps_list");
  const auto di = rh_dichotomy(rec, curve, tr, dopt);
  res.metrics["shock_fraction"] = di.shock_fraction;
  res.metrics["continuous_fraction"] = di.continuous_fraction;
  res.metrics["mean_rh_residual"] = di.mean_rh_residual;
  res.metrics["mean_entropy_residual"] = di.mean_entropy_residual;
  res.metrics["trace_jump"] = {di.trace_jump_rho, di.trace_jump_m};
  res.metrics["pairing_vs_trace"] = di.pairing_vs_trace;
  res.metrics["label"] = di.overall == PointLabel::shock ? "SHOCK" : "CONTINUOUS";
  for (const auto& pr : di.pairings)
    res.metrics["pairings"].push_back(
        {{"eps", pr.eps}, {"jump_rho", pr.jump_rho}, {"jump_m", pr.jump_m},
         {"rh_residual", pr.rh_residual}});
  res.metrics["trace"] = trace_json(tr);
  if (const auto* v = p.find("expect")) {
    const std::string want = v->as_string(spec.name + ".expect");
    const std::string got = di.overall == PointLabel::shock ? "shock" : "continuous";
    res.pass = want == got;
    res.metrics["expected"] = want;
  }
  // Entropic jumps only: the energy-pair defect must not be positive.
  if (di.overall == PointLabel::shock && di.mean_entropy_residual > 1e-8) res.pass = false;
  Table pts;
  pts.header = {"t", "label_shock", "jump_norm", "hdot", "rh_residual", "entropy_residual"};
  for (const auto& q : di.points)
    pts.rows.push_back({q.t, q.label == PointLabel::shock ? 1.0 : 0.0, q.jump_norm, q.hdot,
                        q.rh_residual, q.entropy_residual});
  write_table_csv(dir / (spec.name + "_points.csv"), pts);
  return res;
}

CheckResult run_degiorgi(const fs::path& dir, const SpaceTimeRecord& rec,
                         const DiagnosticSpec& spec) {
  CheckResult res{spec.name, "degiorgi"};
  const auto& p = spec.params;
  const std::string where = spec.name;
  DeGiorgiOptions opt;
  opt.scale = p.find("scale") ? p.find("scale")->as_number(where + ".scale") : 0.1;
  if (const auto* v = p.find("k_max")) opt.k_max = v->as_int(where + ".k_max");
  if (const auto* v = p.find("eta")) opt.eta = v->as_number(where + ".eta");
  if (const auto* v = p.find("eps_target")) opt.eps_target = v->as_number(where + ".eps_target");
  const double tc = p.find("t_center") ? p.find("t_center")->as_number(where + ".t_center")
                                       : 0.5 * (rec.t_begin() + rec.t_end());
  const double xc = p.find("x_center") ? p.find("x_center")->as_number(where + ".x_center")
                                       : 0.5 * (rec.grid.x_min + rec.grid.x_max);
  const std::string dirn =
      p.find("direction") ? p.find("direction")->as_string(where + ".direction") : "above_lambda2";
  OneSided direction;
  if (dirn == "above_lambda2")
    direction = OneSided::above_lambda2;
  else if (dirn == "below_lambda1")
    direction = OneSided::below_lambda1;
  else
    throw ConfigError(where + ".direction must be 'above_lambda2' or 'below_lambda1'");
  const ConservedState bar{
      p.find("bar_rho") ? p.find("bar_rho")->as_number(where + ".bar_rho") : 1.0,
      p.find("bar_m") ? p.find("bar_m")->as_number(where + ".bar_m") : 0.0};
  const auto rep = degiorgi_monitor(rec, tc, xc, bar, direction, opt);
  bool monotone = true;
  for (std::size_t k = 0; k + 1 < rep.U_k.size(); ++k)
    if (rep.U_k[k + 1] > rep.U_k[k] + 1e-15) monotone = false;
  res.pass = monotone && rep.truncation_vanishes;
  res.metrics = {{"eps", rep.eps},
                 {"sup_b1", rep.sup_b1},
                 {"eta", rep.eta},
                 {"Gamma", rep.Gamma},
                 {"M", rep.M},
                 {"theta0", rep.theta0},
                 {"alpha", rep.alpha},
                 {"eps_below_target", rep.eps_below_target},
                 {"truncation_vanishes", rep.truncation_vanishes},
                 {"ladder_monotone", monotone}};
  Table t;
  t.header = {"k", "r_k", "l_k", "U_k"};
  for (std::size_t k = 0; k < rep.U_k.size(); ++k)
    t.rows.push_back({static_cast<double>(k), rep.r_k[k], rep.l_k[k], rep.U_k[k]});
  write_table_csv(dir / (spec.name + "_ladder.csv"), t);
  return res;
}

CheckResult run_semicont(const fs::path& dir, const SpaceTimeRecord& rec,
                         const DiagnosticSpec& spec) {
  CheckResult res{spec.name, "semicont"};
  const auto& p = spec.params;
  const std::string where = spec.name;
  SemicontinuityOptions opt;
  if (const auto* v = p.find("base_radius")) opt.base_radius = v->as_number(where + ".base_radius");
  if (const auto* v = p.find("ladder")) opt.ladder = v->as_int(where + ".ladder");
  if (const auto* v = p.find("vmo_tol")) opt.vmo_tol = v->as_number(where + ".vmo_tol");
  if (const auto* v = p.find("eq_tol")) opt.eq_tol = v->as_number(where + ".eq_tol");
  const int count = p.find("count") ? p.find("count")->as_int(where + ".count") : 20;
  const unsigned seed = p.find("seed") ? static_cast<unsigned>(p.find("seed")->as_int(where)) : 7u;
  const double t_lo = p.find("t_lo") ? p.find("t_lo")->as_number(where) : rec.t_begin();
  const double t_hi = p.find("t_hi") ? p.find("t_hi")->as_number(where) : rec.t_end();
  const double x_lo = p.find("x_lo") ? p.find("x_lo")->as_number(where) : rec.grid.x_min;
  const double x_hi = p.find("x_hi") ? p.find("x_hi")->as_number(where) : rec.grid.x_max;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> td(t_lo, t_hi), xd(x_lo, x_hi);
  std::vector<std::pair<double, double>> pts;
  for (int k = 0; k < count; ++k) pts.push_back({td(rng), xd(rng)});
  const auto reports = semicontinuity_check(rec, pts, opt);
  int evaluable = 0, vmo = 0, pass = 0;
  Table t;
  t.header = {"t", "x", "evaluable", "vmo", "pass", "defect_small", "rho_gap", "l1_gap", "l2_gap"};
  Table ladders;
  ladders.header = {"point", "t", "x", "radius", "vmo_defect"};
  for (std::size_t pi = 0; pi < reports.size(); ++pi) {
    const auto& r = reports[pi];
    evaluable += r.evaluable;
    vmo += r.vmo;
    pass += r.pass;
    t.rows.push_back({r.t, r.x, static_cast<double>(r.evaluable), static_cast<double>(r.vmo),
                      static_cast<double>(r.pass),
                      r.vmo_defect.empty() ? 0.0 : r.vmo_defect.back(),
                      std::abs(r.rho_hat - r.rho_bar), std::abs(r.l1_hat - r.l1_lower),
                      std::abs(r.l2_hat - r.l2_bar)});
    for (std::size_t k = 0; k < r.radii.size(); ++k)
      ladders.rows.push_back({static_cast<double>(pi), r.t, r.x, r.radii[k], r.vmo_defect[k]});
  }
  write_table_csv(dir / (spec.name + "_points.csv"), t);
  write_table_csv(dir / (spec.name + "_ladders.csv"), ladders);
  res.metrics = {{"points", reports.size()},
                 {"evaluable", evaluable},
                 {"vmo", vmo},
                 {"pass", pass}};
  res.pass = pass == vmo;  // every VMO point must satisfy the equalities
  return res;
}

CheckResult run_characteristic(const fs::path& dir, const SpaceTimeRecord& rec,
                               const DiagnosticSpec& spec) {
  CheckResult res{spec.name, "characteristic"};
  const auto& p = spec.params;
  const std::string where = spec.name;
  CharacteristicOptions opt;
  if (const auto* v = p.find("family")) opt.family = v->as_int(where + ".family");
  if (const auto* v = p.find("sigma")) opt.sigma = v->as_number(where + ".sigma");
  if (const auto* v = p.find("eps_ladder"))
    opt.eps_ladder = v->as_number_array(where + ".eps_ladder");
  if (const auto* v = p.find("t_end")) opt.t_end = v->as_number(where + ".t_end");
  if (const auto* v = p.find("bound_tol")) opt.bound_tol = v->as_number(where + ".bound_tol");
  if (const auto* v = p.find("trace_band")) opt.trace_band = v->as_number(where + ".trace_band");
  const double x0 = p.find("x0") ? p.find("x0")->as_number(where + ".x0")
                                 : 0.5 * (rec.grid.x_min + rec.grid.x_max);
  const auto runout = solve_characteristic(rec, x0, opt);
  bool hdot_bound = true;
  for (double m : runout.max_abs_hdot_eps)
    if (m > runout.v_inf + 1e-12) hdot_bound = false;
  res.pass = hdot_bound;
  res.metrics = {{"family", runout.family},
                 {"sigma", runout.sigma},
                 {"x0", runout.x0},
                 {"v_inf", runout.v_inf},
                 {"lambda_sup", runout.lambda_sup},
                 {"violation_fraction", runout.violation_fraction},
                 {"vacuum_flagged", runout.vacuum_flagged},
                 {"ladder_converging", runout.ladder_converging},
                 {"ladder_gaps", runout.ladder_gaps},
                 {"hdot_bound_ok", hdot_bound}};
  if (runout.dichotomy)
    res.metrics["label"] =
        runout.dichotomy->overall == PointLabel::shock ? "SHOCK" : "CONTINUOUS";
  Table t;
  t.header = {"t", "h", "hdot", "lambda1_plus", "lambda1_sup", "violation_flag"};
  for (std::size_t j = 0; j < runout.times.size(); ++j)
    t.rows.push_back({runout.times[j], runout.h[j], runout.hdot[j], runout.lambda1_plus[j],
                      runout.lambda_sup, static_cast<double>(runout.violation[j])});
  write_table_csv(dir / (spec.name + ".csv"), t);
  nlohmann::json ladder;
  ladder["eps"] = runout.eps_ladder;
  ladder["gaps"] = runout.ladder_gaps;
  ladder["converging"] = runout.ladder_converging;
  write_json(dir / (spec.name + "_ladder.json"), ladder);
  return res;
}

CheckResult run_mu(const fs::path& dir, const SpaceTimeRecord& rec, const DiagnosticSpec& spec) {
  CheckResult res{spec.name, "mu"};
  const int v_bins = spec.params.find("v_bins")
                         ? spec.params.find("v_bins")->as_int(spec.name + ".v_bins")
                         : 64;
  const auto mu = mu_estimate(rec, v_bins);
  double min_mass = 0.0;
  for (double v : mu.mass) min_mass = std::min(min_mass, v);
  res.pass = min_mass >= -1e-12;
  res.metrics = {{"total_mass", mu.total()},
                 {"min_bin_mass", min_mass},
                 {"v_bins", mu.v_bins()},
                 {"rate", rec.t_end() > rec.t_begin() ? mu.total() / (rec.t_end() - rec.t_begin())
                                                      : 0.0}};
  write_dissipation(dir / (spec.name + ".csv"), dir / (spec.name + ".json"), mu);
  return res;
}

CheckResult run_tv_bound(const fs::path& dir, const SpaceTimeRecord& rec,
                         const DiagnosticSpec& spec) {
  CheckResult res{spec.name, "tv_bound"};
  const auto& p = spec.params;
  const std::string where = spec.name;
  const auto mu = mu_estimate(rec, rec.collapse_log ? rec.collapse_log->v_bins() : 64);
  const double tc = p.find("t_center") ? p.find("t_center")->as_number(where) : 0.0;
  const double xc = p.find("x_center") ? p.find("x_center")->as_number(where) : 0.0;
  const double r = p.find("r") ? p.find("r")->as_number(where) : 0.04;
  const double R = p.find("R") ? p.find("R")->as_number(where) : 0.08;
  const double a = p.find("a") ? p.find("a")->as_number(where) : 0.0;
  const std::string tail = p.find("tail") ? p.find("tail")->as_string(where) : "below";
  const auto rep = tv_bound_check(mu, rec, tc, xc, r, R, a,
                                  tail == "above" ? VelocityTail::above : VelocityTail::below);
  res.pass = std::isfinite(rep.ratio);
  res.metrics = {{"numerator", rep.numerator},
                 {"denominator", rep.denominator},
                 {"ratio", rep.ratio},
                 {"trivial_zero", rep.trivial_zero},
                 {"r", r},
                 {"R", R},
                 {"a", a},
                 {"tail", tail}};
  write_json(dir / (spec.name + ".json"), res.metrics);
  return res;
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& cfg, const std::string& out_dir, bool dry_run,
                            const std::string& only_kind) {
  PipelineResult result;
  const fs::path dir = out_dir.empty() ? fs::path(cfg.output_dir) : fs::path(out_dir);
  result.dir = dir;
  nlohmann::json summary;
  summary["config"] = nlohmann::json::parse(config_echo(cfg));
  if (dry_run) {
    result.summary = summary;
    return result;
  }
  fs::create_directories(dir);

  const auto initial = make_initial(cfg.initial, cfg.grid);
  const auto rec = run(initial, cfg.grid, cfg.scheme);
  write_record(dir, rec, &summary["config"]);
  summary["record"] = audit_summary(rec);
  summary["velocity_bound"] = rec.velocity_bound;

  for (const auto& spec : cfg.diagnostics) {
    if (!only_kind.empty() && spec.kind != only_kind) continue;
    CheckResult res;
    try {
      if (spec.kind == "trace")
        res = run_trace(dir, rec, spec);
      else if (spec.kind == "rh")
        res = run_rh(dir, rec, spec);
      else if (spec.kind == "degiorgi")
        res = run_degiorgi(dir, rec, spec);
      else if (spec.kind == "semicont")
        res = run_semicont(dir, rec, spec);
      else if (spec.kind == "characteristic")
        res = run_characteristic(dir, rec, spec);
      else if (spec.kind == "mu")
        res = run_mu(dir, rec, spec);
      else if (spec.kind == "tv_bound")
        res = run_tv_bound(dir, rec, spec);
      else
        throw ConfigError("unknown diagnostic kind '" + spec.kind + "'");
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      res.name = spec.name;
      res.kind = spec.kind;
      res.pass = false;
      res.metrics = {{"error", e.what()}};
    }
    write_json(dir / (spec.name + "_report.json"), {{"name", res.name},
                                                    {"kind", res.kind},
                                                    {"pass", res.pass},
                                                    {"metrics", res.metrics}});
    result.checks.push_back(std::move(res));
  }

  bool all_pass = true;
  for (const auto& c : result.checks) {
    summary["checks"].push_back({{"name", c.name}, {"kind", c.kind}, {"pass", c.pass},
                                 {"metrics", c.metrics}});
    all_pass = all_pass && c.pass;
  }
  summary["all_pass"] = all_pass;
  result.summary = summary;
  result.exit_code = all_pass ? 0 : 1;
  write_json(dir / "summary.json", summary);
  return result;
}

void apply_override(RunConfig& cfg, const std::string& param, double value) {
  if (param == "grid.n_cells")
    cfg.grid = Grid1D(cfg.grid.x_min, cfg.grid.x_max, static_cast<int>(std::llround(value)),
                      cfg.grid.boundary);
  else if (param == "scheme.t_end")
    cfg.scheme.t_end = value;
  else if (param == "scheme.cfl")
    cfg.scheme.cfl = value;
  else if (param == "initial.amplitude")
    cfg.initial.amplitude = value;
  else if (param == "initial.seed")
    cfg.initial.seed = static_cast<unsigned>(std::llround(value));
  else if (param == "dissipation.v_nodes")
    cfg.scheme.dissipation.v_nodes = static_cast<int>(std::llround(value));
  else
    throw ConfigError("sweep: unsupported parameter '" + param +
                      "' (grid.n_cells, scheme.t_end, scheme.cfl, initial.amplitude, "
                      "initial.seed, dissipation.v_nodes)");
}

namespace {

void flatten(const nlohmann::json& j, const std::string& prefix,
             std::vector<std::pair<std::string, double>>& out) {
  if (j.is_number()) {
    out.push_back({prefix, j.get<double>()});
  } else if (j.is_boolean()) {
    out.push_back({prefix, j.get<bool>() ? 1.0 : 0.0});
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  }
}

}  // namespace

SweepResult sweep(const RunConfig& base, const std::string& param,
                  const std::vector<double>& values, const std::string& out_dir, int threads,
                  const std::string& fit_metric) {
  if (values.empty()) throw ConfigError("sweep: empty axis");
  const fs::path dir(out_dir);
  fs::create_directories(dir);

  std::vector<PipelineResult> results(values.size());
  const int nthreads = std::max(1, threads);
  std::size_t next = 0;
  while (next < values.size()) {
    std::vector<std::future<PipelineResult>> batch;
    for (int t = 0; t < nthreads && next < values.size(); ++t, ++next) {
      RunConfig cfg = base;
      apply_override(cfg, param, values[next]);
      const fs::path sub = dir / ("run_" + std::to_string(next));
      batch.push_back(std::async(std::launch::async, [cfg, sub]() {
        return run_pipeline(cfg, sub.string());
      }));
    }
    for (std::size_t t = 0; t < batch.size(); ++t)
      results[next - batch.size() + t] = batch[t].get();
  }

  SweepResult out;
  nlohmann::json agg;
  agg["param"] = param;
  agg["values"] = values;
  Table table;
  table.header = {"value"};
  std::vector<std::pair<std::string, double>> first_flat;
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::vector<std::pair<std::string, double>> flat;
    for (const auto& c : results[i].checks) flatten(c.metrics, c.kind + "." + c.name, flat);
    flatten(results[i].summary["record"], "record", flat);
    if (i == 0) {
      first_flat = flat;
      for (const auto& [k, v] : flat) table.header.push_back(k);
    }
    std::vector<double> row{values[i]};
    for (const auto& [k, v] : first_flat) {
      double val = 0.0;
      for (const auto& [k2, v2] : flat)
        if (k2 == k) {
          val = v2;
          break;
        }
      row.push_back(val);
    }
    table.rows.push_back(row);
    agg["runs"].push_back({{"value", values[i]},
                           {"exit_code", results[i].exit_code},
                           {"all_pass", results[i].summary["all_pass"]}});
    out.exit_code = std::max(out.exit_code, results[i].exit_code);
  }
  write_table_csv(dir / "aggregate.csv", table);

  if (!fit_metric.empty()) {
    const int col = table.column(fit_metric);
    if (col < 0) throw ConfigError("sweep: fit metric '" + fit_metric + "' not found");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& row : table.rows) {
      if (!(row[0] > 0.0) || !(row[col] > 0.0)) continue;
      const double x = std::log(row[0]), y = std::log(row[col]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    if (n >= 2) {
      agg["fit_metric"] = fit_metric;
      agg["loglog_slope"] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
  }
  write_json(dir / "aggregate.json", agg);
  out.aggregate = agg;
  return out;
}

}  // namespace eulerkin
