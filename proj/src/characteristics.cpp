#include "eulerkin/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace eulerkin {

double capped_velocity(const ConservedState& u, int family, double sigma, double rho_floor,
                       bool* touched_vacuum) {
  if (u.rho <= rho_floor) {
    if (touched_vacuum) *touched_vacuum = true;
    return sigma;
  }
  const auto inv = riemann_invariants(u, rho_floor);
  return family == 1 ? std::min(inv.lambda1, sigma) : std::max(inv.lambda2, sigma);
}

double mollified_velocity(const SpaceTimeRecord& rec, const MollifierKernel& kernel, double t,
                          double x, int family, double sigma, bool* touched_vacuum) {
  const double eps = kernel.eps;
  if (t < rec.t_begin() - 1e-12 || t + eps > rec.t_end() + 1e-12) {
    std::ostringstream os;
    os << "mollified_velocity: kernel support (" << t << ", " << t + eps
       << ") exits the record [" << rec.t_begin() << ", " << rec.t_end() << "]";
    throw GeometryError(os.str());
  }
  if (rec.grid.boundary == Boundary::outflow &&
      (x - eps < rec.grid.x_min - 1e-12 || x > rec.grid.x_max + 1e-12)) {
    throw GeometryError("mollified_velocity: spatial support exits the domain");
  }
  double v = 0.0;
  for (int a = 0; a < kernel.nodes.size(); ++a) {
    const double ts = t + eps * kernel.nodes[a];  // psi_eps(-tau) puts tau in (-eps, 0)
    for (int b = 0; b < kernel.nodes.size(); ++b) {
      const double xs = x - eps * kernel.nodes[b];
      const auto u = rec.at(ts, xs);
      v += kernel.weights[a] * kernel.weights[b] *
           capped_velocity(u, family, sigma, rec.rho_floor, touched_vacuum);
    }
  }
  return v;
}

namespace {

double default_sigma(const SpaceTimeRecord& rec, int family) {
  double s = family == 1 ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
  for (const auto& snap : rec.snapshots) {
    for (int i = 0; i < snap.size(); ++i) {
      if (snap.rho[i] <= rec.rho_floor) continue;
      const auto inv = riemann_invariants(snap.rho[i], snap.m[i], rec.rho_floor);
      if (family == 1)
        s = std::max(s, inv.lambda1);
      else
        s = std::min(s, inv.lambda2);
    }
  }
  if (!std::isfinite(s)) throw VacuumError("solve_characteristic: record is all vacuum");
  return s;
}

}  // namespace

LipschitzCurve CharacteristicRun::curve() const {
  return LipschitzCurve::from_samples(times, h);
}

CharacteristicRun solve_characteristic(const SpaceTimeRecord& rec, double x0,
                                       CharacteristicOptions opts) {
  if (opts.family != 1 && opts.family != 2)
    throw ConfigError("solve_characteristic: family must be 1 or 2");
  const double dx = rec.grid.dx();
  CharacteristicRun run;
  run.family = opts.family;
  run.x0 = x0;
  run.eps_ladder = opts.eps_ladder;
  if (run.eps_ladder.empty()) run.eps_ladder = {16.0 * dx, 8.0 * dx, 4.0 * dx};
  std::sort(run.eps_ladder.begin(), run.eps_ladder.end(), std::greater<double>());
  const double eps_max = run.eps_ladder.front();
  run.sigma = opts.sigma.value_or(default_sigma(rec, opts.family));
  run.lambda_sup = default_sigma(rec, opts.family);

  // ||V||_inf over the record (vacuum cells contribute the cap).
  {
    double vmax = std::abs(run.sigma);
    for (const auto& snap : rec.snapshots)
      for (int i = 0; i < snap.size(); ++i)
        vmax = std::max(vmax, std::abs(capped_velocity(snap.cell(i), opts.family, run.sigma,
                                                       rec.rho_floor)));
    run.v_inf = vmax;
  }

  const double t0 = rec.t_begin();
  double t_stop = opts.t_end.value_or(rec.t_end() - eps_max * (1.0 + 1e-6));
  t_stop = std::min(t_stop, rec.t_end() - eps_max * (1.0 + 1e-6));
  if (!(t_stop > t0)) {
    std::ostringstream os;
    os << "solve_characteristic: no usable horizon (record spans [" << t0 << ", " << rec.t_end()
       << "], largest eps " << eps_max << ")";
    throw GeometryError(os.str());
  }

  // Common output grid: the record's snapshot times clipped to [t0, t_stop].
  for (double t : rec.times)
    if (t <= t_stop + 1e-12) run.times.push_back(std::min(t, t_stop));
  if (run.times.size() < 2) throw GeometryError("solve_characteristic: horizon below one snapshot");

  for (double eps : run.eps_ladder) {
    const auto kernel = MollifierKernel::bump(eps, opts.kernel_nodes);
    const double dt_ode = opts.ode_step_factor * eps;
    std::vector<double> ts{t0}, hs{x0};
    double t = t0, h = x0, max_hdot = 0.0;
    bool vac = false;
    while (t < t_stop - 1e-14) {
      const double dt = std::min(dt_ode, t_stop - t);
      // Heun step.
      const double k1 = mollified_velocity(rec, kernel, t, h, opts.family, run.sigma, &vac);
      const double k2 =
          mollified_velocity(rec, kernel, t + dt, h + dt * k1, opts.family, run.sigma, &vac);
      max_hdot = std::max({max_hdot, std::abs(k1), std::abs(k2)});
      h += 0.5 * dt * (k1 + k2);
      t += dt;
      ts.push_back(t);
      hs.push_back(h);
    }
    run.vacuum_flagged = run.vacuum_flagged || vac;
    run.max_abs_hdot_eps.push_back(max_hdot);
    // Resample onto the common grid.
    const auto curve = LipschitzCurve::from_samples(ts, hs);
    std::vector<double> resampled;
    resampled.reserve(run.times.size());
    for (double tt : run.times) resampled.push_back(curve.at(tt));
    run.h_eps.push_back(std::move(resampled));
  }

  for (std::size_t i = 0; i + 1 < run.h_eps.size(); ++i) {
    double gap = 0.0;
    for (std::size_t j = 0; j < run.times.size(); ++j)
      gap = std::max(gap, std::abs(run.h_eps[i][j] - run.h_eps[i + 1][j]));
    run.ladder_gaps.push_back(gap);
  }
  for (std::size_t i = 0; i + 1 < run.ladder_gaps.size(); ++i)
    if (run.ladder_gaps[i + 1] > run.ladder_gaps[i] + 1e-12) run.ladder_converging = false;

  run.h = run.h_eps.back();
  run.hdot.assign(run.times.size(), 0.0);
  for (std::size_t j = 0; j < run.times.size(); ++j) {
    const std::size_t lo = j > 0 ? j - 1 : j;
    const std::size_t hi = std::min(j + 1, run.times.size() - 1);
    run.hdot[j] = (run.h[hi] - run.h[lo]) / (run.times[hi] - run.times[lo]);
  }

  // Verification pass: traces along the limit curve, the one-sided speed
  // bounds, and the shock/continuous dichotomy.
  SpaceTimeRecord sub;
  sub.grid = rec.grid;
  sub.scheme = rec.scheme;
  sub.cfl = rec.cfl;
  sub.dt = rec.dt;
  sub.velocity_bound = rec.velocity_bound;
  sub.rho_floor = rec.rho_floor;
  const int keep = static_cast<int>(run.times.size());
  sub.times.assign(rec.times.begin(), rec.times.begin() + keep);
  sub.snapshots.assign(rec.snapshots.begin(), rec.snapshots.begin() + keep);

  const LipschitzCurve hc = LipschitzCurve::from_samples(run.times, run.h);
  TraceOptions topt;
  topt.band = opts.trace_band > 0.0 ? opts.trace_band : 16.0 * dx;
  const auto trace = extract_trace(sub, hc, TraceSide::both, topt);
  run.trace = trace;
  run.dichotomy = rh_dichotomy(sub, hc, trace);

  // One-sided bound check. The discrete surrogate for lambda1(u+) is the
  // band *extremum* on the + side (min for the family-1 lower bound, max for
  // the family-2 upper bound): a band average inside a fan is biased by half
  // the band width, which is pure discretization.
  run.lambda1_plus.assign(run.times.size(), 0.0);
  run.violation.assign(run.times.size(), 0);
  const double dx_g = rec.grid.dx();
  const int n_band = std::max(1, static_cast<int>(std::floor(topt.band / dx_g + 1e-9)));
  int viols = 0, counted = 0;
  for (std::size_t j = 0; j < run.times.size(); ++j) {
    double ext = opts.family == 1 ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity();
    bool vac = false;
    for (int o = 1; o <= n_band; ++o) {
      const auto u = rec.at(run.times[j], run.h[j] + o * dx_g);
      if (u.rho <= rec.rho_floor) {
        vac = true;
        break;
      }
      const auto inv = riemann_invariants(u, rec.rho_floor);
      ext = opts.family == 1 ? std::min(ext, inv.lambda1) : std::max(ext, inv.lambda2);
    }
    if (vac) continue;
    run.lambda1_plus[j] = ext;
    ++counted;
    bool bad;
    if (opts.family == 1)
      bad = run.hdot[j] < ext - opts.bound_tol || run.hdot[j] > run.lambda_sup + opts.bound_tol;
    else
      bad = run.hdot[j] > ext + opts.bound_tol || run.hdot[j] < run.lambda_sup - opts.bound_tol;
    if (bad) {
      run.violation[j] = 1;
      ++viols;
    }
  }
  run.violation_fraction = counted > 0 ? static_cast<double>(viols) / counted : 0.0;
  return run;
}

}  // namespace eulerkin
