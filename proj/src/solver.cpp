#include "eulerkin/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eulerkin/riemann.hpp"

namespace eulerkin {

namespace {

/// Moment integrals of a linear weight (alpha + beta v) over [p, q], factored
/// to keep every term proportional to (q - p).
struct MomentAccum {
  double r = 0.0, m = 0.0, e2 = 0.0;

  void add(double p, double q, double alpha, double beta) {
    if (!(q > p)) return;
    const double w = q - p;
    const double i0 = w;
    const double i1 = w * 0.5 * (q + p);
    const double i2 = w * (q * q + q * p + p * p) / 3.0;
    const double i3 = w * 0.25 * (q + p) * (q * q + p * p);
    r += alpha * i0 + beta * i1;
    m += alpha * i1 + beta * i2;
    e2 += alpha * i2 + beta * i3;
  }
};

/// int_{max(p,v0)}^{q} (v - v0)(alpha + beta v) dv.
double kernel_piece(double p, double q, double alpha, double beta, double v0) {
  const double pp = std::max(p, v0);
  if (!(q > pp)) return 0.0;
  const double w = q - pp;
  const double i0 = w;
  const double i1 = w * 0.5 * (q + pp);
  const double i2 = w * (q * q + q * pp + pp * pp) / 3.0;
  return beta * i2 + (alpha - v0 * beta) * i1 - v0 * alpha * i0;
}

/// int (v - v0)_+ over [l1, l2].
double kernel_interval(double l1, double l2, double v0) {
  const double a = std::max(l2 - v0, 0.0);
  const double b = std::max(l1 - v0, 0.0);
  return 0.5 * (a * a - b * b);
}

struct Piece {
  double p, q, alpha, beta;
};

}  // namespace

StepResult transport_collapse_step(const ConservedField& f, const Grid1D& grid, double dt,
                                   double L, double rho_floor, const Eigen::ArrayXd* v_nodes,
                                   Eigen::MatrixXd* kernel_drops) {
  const int n = f.size();
  const double dx = grid.dx();
  if (dt > dx / std::max(L, 1e-300) * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "transport_collapse_step: CFL violation, dt = " << dt << " > dx/L = " << dx / L;
    throw ConfigError(os.str());
  }
  const double kappa = dt / dx;

  const auto k = to_intervals(f, rho_floor, 1.0);
  StepResult out;
  out.field = ConservedField(n);
  out.dissipation.setZero(n);
  const bool log_kernels = v_nodes != nullptr && kernel_drops != nullptr;
  if (log_kernels) kernel_drops->setZero();

  Piece pieces[4];
  for (int j = 0; j < n; ++j) {
    int np = 0;
    // Source j: tent weight 1 - kappa |v|, split at v = 0.
    if (f.rho[j] > rho_floor) {
      const double a = k.lambda1[j], b = k.lambda2[j];
      if (a < 0.0) pieces[np++] = {a, std::min(b, 0.0), 1.0, kappa};
      if (b > 0.0) pieces[np++] = {std::max(a, 0.0), b, 1.0, -kappa};
    }
    // Source j-1 moves right: weight kappa v on v > 0.
    {
      const int i = grid.neighbor(j, -1);
      if (f.rho[i] > rho_floor && k.lambda2[i] > 0.0)
        pieces[np++] = {std::max(k.lambda1[i], 0.0), k.lambda2[i], 0.0, kappa};
    }
    // Source j+1 moves left: weight -kappa v on v < 0.
    {
      const int i = grid.neighbor(j, +1);
      if (f.rho[i] > rho_floor && k.lambda1[i] < 0.0)
        pieces[np++] = {k.lambda1[i], std::min(k.lambda2[i], 0.0), 0.0, -kappa};
    }

    MomentAccum acc;
    for (int p = 0; p < np; ++p) acc.add(pieces[p].p, pieces[p].q, pieces[p].alpha, pieces[p].beta);

    if (acc.r < -1e-13) {
      std::ostringstream os;
      os << "transport_collapse_step: negative transported density " << acc.r << " in cell " << j;
      throw InternalError(os.str());
    }
    const double r = std::max(acc.r, 0.0);
    double l1n = 0.0, l2n = 0.0, e2n = 0.0;
    if (r > rho_floor) {
      const double u = acc.m / r;
      l1n = u - 0.5 * r;
      l2n = u + 0.5 * r;
      e2n = acc.m * u + r * r * r / 12.0;
      out.field.rho[j] = r;
      out.field.m[j] = acc.m;
    } else {
      out.field.rho[j] = r;
      out.field.m[j] = 0.0;  // vacuum carries no momentum
    }
    out.dissipation[j] = 0.5 * (acc.e2 - e2n);

    if (log_kernels) {
      const auto& v0 = *v_nodes;
      for (int iv = 0; iv < v0.size(); ++iv) {
        double before = 0.0;
        for (int p = 0; p < np; ++p)
          before += kernel_piece(pieces[p].p, pieces[p].q, pieces[p].alpha, pieces[p].beta, v0[iv]);
        const double after = r > rho_floor ? kernel_interval(l1n, l2n, v0[iv]) : 0.0;
        (*kernel_drops)(j, iv) = before - after;
      }
    }
  }
  return out;
}

ConservedField godunov_step(const ConservedField& f, const Grid1D& grid, double dt,
                            double rho_floor) {
  const int n = f.size();
  const double dx = grid.dx();
  const double smax = max_wave_speed(f, rho_floor);
  if (dt > 0.5 * dx / std::max(smax, 1e-300) * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "godunov_step: CFL violation, dt = " << dt << " > dx/(2 s_max) = " << 0.5 * dx / smax;
    throw ConfigError(os.str());
  }

  // Interface flux i sits between cells i-1 and i.
  auto interface_flux = [&](const ConservedState& a, const ConservedState& b) {
    if (a.rho == b.rho && a.m == b.m) return std::pair<double, double>{a.m, momentum_flux(a)};
    const auto sol = solve_riemann(a, b, rho_floor);
    const auto u0 = sample_riemann(sol, 0.0);
    return std::pair<double, double>{u0.m, momentum_flux(u0)};
  };

  ConservedField out(n);
  double flux_rho_prev = 0.0, flux_m_prev = 0.0;
  double flux_rho_first = 0.0, flux_m_first = 0.0;
  for (int i = 0; i < n; ++i) {
    const int left = grid.neighbor(i, -1);
    const auto [fr, fm] = interface_flux(f.cell(left), f.cell(i));
    if (i == 0) {
      flux_rho_first = fr;
      flux_m_first = fm;
    } else {
      out.rho[i - 1] = f.rho[i - 1] - dt / dx * (fr - flux_rho_prev);
      out.m[i - 1] = f.m[i - 1] - dt / dx * (fm - flux_m_prev);
    }
    flux_rho_prev = fr;
    flux_m_prev = fm;
  }
  // Closing interface (right of the last cell).
  {
    const int right = grid.neighbor(n - 1, +1);
    double fr, fm;
    if (grid.boundary == Boundary::periodic) {
      fr = flux_rho_first;
      fm = flux_m_first;
    } else {
      const auto fx = interface_flux(f.cell(n - 1), f.cell(right));
      fr = fx.first;
      fm = fx.second;
    }
    out.rho[n - 1] = f.rho[n - 1] - dt / dx * (fr - flux_rho_prev);
    out.m[n - 1] = f.m[n - 1] - dt / dx * (fm - flux_m_prev);
  }
  for (int i = 0; i < n; ++i) {
    if (out.rho[i] < -1e-13) throw InternalError("godunov_step: negative density");
    if (out.rho[i] <= rho_floor) out.m[i] = 0.0;
    out.rho[i] = std::max(out.rho[i], 0.0);
  }
  return out;
}

namespace {

double energy_entropy_total(const ConservedField& f, double dx, double rho_floor) {
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    if (f.rho[i] > rho_floor)
      s += 0.5 * (f.m[i] * f.m[i] / f.rho[i] + std::pow(f.rho[i], 3) / 12.0);
  }
  return s * dx;
}

StepAudit make_audit(const ConservedField& f, const Grid1D& grid, double t, double rho_floor,
                     double collapse_total) {
  StepAudit a;
  a.t = t;
  a.collapse_dissipation = collapse_total;
  const double dx = grid.dx();
  double mass = 0.0, mom = 0.0;
  double minl1 = std::numeric_limits<double>::infinity();
  double maxl2 = -std::numeric_limits<double>::infinity();
  double minrho = std::numeric_limits<double>::infinity();
  int vac = 0;
  for (int i = 0; i < f.size(); ++i) {
    mass += f.rho[i];
    mom += f.m[i];
    minrho = std::min(minrho, f.rho[i]);
    if (f.rho[i] > rho_floor) {
      const auto inv = riemann_invariants(f.rho[i], f.m[i], rho_floor);
      minl1 = std::min(minl1, inv.lambda1);
      maxl2 = std::max(maxl2, inv.lambda2);
    } else {
      ++vac;
    }
  }
  a.mass = mass * dx;
  a.momentum = mom * dx;
  a.min_lambda1 = std::isfinite(minl1) ? minl1 : 0.0;
  a.max_lambda2 = std::isfinite(maxl2) ? maxl2 : 0.0;
  a.entropy_total = energy_entropy_total(f, dx, rho_floor);
  a.min_rho = minrho;
  a.vacuum_cells = vac;
  return a;
}

}  // namespace

SpaceTimeRecord run(const ConservedField& initial, const Grid1D& grid, const SchemeConfig& cfg) {
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw ConfigError("run: cfl must lie in (0, 1]");
  if (cfg.scheme == Scheme::godunov && cfg.cfl > 0.5)
    throw ConfigError("run: godunov scheme requires cfl <= 0.5");
  if (cfg.t_end < 0.0) throw ConfigError("run: t_end must be >= 0");
  if (cfg.snapshot_stride < 1) throw ConfigError("run: snapshot_stride must be >= 1");
  if (initial.size() != grid.n_cells) throw ConfigError("run: field size != grid size");

  SpaceTimeRecord rec;
  rec.grid = grid;
  rec.scheme = cfg.scheme;
  rec.cfl = cfg.cfl;
  rec.rho_floor = cfg.rho_floor;
  const double L = cfg.velocity_bound.value_or(
      cfg.velocity_margin * std::max(max_wave_speed(initial, cfg.rho_floor), 1e-12));
  rec.velocity_bound = L;
  const double dx = grid.dx();
  const double dt = cfg.cfl * dx / L;
  rec.dt = dt;

  const int n_steps = cfg.t_end <= 0.0 ? 0 : static_cast<int>(std::ceil(cfg.t_end / dt - 1e-9));

  // Kernel-resolved dissipation log (kinetic scheme only).
  Eigen::ArrayXd v_nodes;
  Eigen::MatrixXd drops;
  const bool log_kernels =
      cfg.scheme == Scheme::kinetic && cfg.dissipation.v_nodes > 0 && n_steps > 0;
  if (log_kernels) {
    DissipationField log;
    const int V = cfg.dissipation.v_nodes;
    const int X = cfg.dissipation.x_bins > 0 ? cfg.dissipation.x_bins
                                             : std::min(grid.n_cells, 512);
    const int T = std::max(1, std::min(cfg.dissipation.t_slabs, n_steps));
    log.v0.resize(V);
    log.dv = 2.0 * L / V;
    for (int i = 0; i < V; ++i) log.v0[i] = -L + (i + 0.5) * log.dv;
    log.t_edges.resize(T + 1);
    for (int i = 0; i <= T; ++i) log.t_edges[i] = cfg.t_end * i / T;
    log.x_edges.resize(X + 1);
    for (int i = 0; i <= X; ++i) log.x_edges[i] = grid.x_min + grid.length() * i / X;
    log.mass.assign(static_cast<std::size_t>(T) * X * V, 0.0);
    rec.collapse_log = std::move(log);
    v_nodes = rec.collapse_log->v0;
    drops.resize(grid.n_cells, V);
  }

  ConservedField u = initial;
  rec.times.push_back(0.0);
  rec.snapshots.push_back(u);
  rec.audits.push_back(make_audit(u, grid, 0.0, cfg.rho_floor, 0.0));

  double t = 0.0;
  for (int step = 0; step < n_steps; ++step) {
    const double dt_step = std::min(dt, cfg.t_end - t);
    double collapse_total = 0.0;
    try {
      if (cfg.scheme == Scheme::kinetic) {
        auto res = transport_collapse_step(u, grid, dt_step, L, cfg.rho_floor,
                                           log_kernels ? &v_nodes : nullptr,
                                           log_kernels ? &drops : nullptr);
        collapse_total = res.dissipation.sum() * dx;
        u = std::move(res.field);
        if (log_kernels) {
          auto& log = *rec.collapse_log;
          const double t_mid = t + 0.5 * dt_step;
          int it = static_cast<int>((t_mid / cfg.t_end) * log.t_bins());
          it = std::clamp(it, 0, log.t_bins() - 1);
          const int X = log.x_bins(), V = log.v_bins();
          for (int j = 0; j < grid.n_cells; ++j) {
            int ix = static_cast<int>((grid.center(j) - grid.x_min) / grid.length() * X);
            ix = std::clamp(ix, 0, X - 1);
            double* row = &log.at(it, ix, 0);
            for (int iv = 0; iv < V; ++iv) row[iv] += drops(j, iv) * dx * log.dv;
          }
        }
      } else {
        u = godunov_step(u, grid, dt_step, cfg.rho_floor);
      }
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "run: step " << step << " at t = " << t << " failed: " << e.what();
      throw NumericError(os.str());
    }
    t += dt_step;
    rec.audits.push_back(make_audit(u, grid, t, cfg.rho_floor, collapse_total));
    if ((step + 1) % cfg.snapshot_stride == 0 || step + 1 == n_steps) {
      rec.times.push_back(t);
      rec.snapshots.push_back(u);
    }
  }
  return rec;
}

int SpaceTimeRecord::snapshot_below(double t) const {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  int i = static_cast<int>(it - times.begin()) - 1;
  return std::clamp(i, 0, static_cast<int>(times.size()) - 1);
}

double SpaceTimeRecord::snapshot_spacing() const {
  if (times.size() < 2) return dt;
  return (times.back() - times.front()) / (static_cast<double>(times.size()) - 1);
}

ConservedState SpaceTimeRecord::at(double t, double x) const {
  const double slack = 1e-9 * std::max(1.0, t_end() - t_begin());
  if (t < t_begin() - slack || t > t_end() + slack) {
    std::ostringstream os;
    os << "SpaceTimeRecord::at: t = " << t << " outside [" << t_begin() << ", " << t_end() << "]";
    throw GeometryError(os.str());
  }
  const double tc = std::clamp(t, t_begin(), t_end());
  const int i = grid.cell_of(x);
  const int k0 = snapshot_below(tc);
  if (k0 + 1 >= static_cast<int>(times.size()))
    return {snapshots[k0].rho[i], snapshots[k0].m[i]};
  const double t0 = times[k0], t1 = times[k0 + 1];
  const double w = t1 > t0 ? (tc - t0) / (t1 - t0) : 0.0;
  const double rho = (1.0 - w) * snapshots[k0].rho[i] + w * snapshots[k0 + 1].rho[i];
  const double m = (1.0 - w) * snapshots[k0].m[i] + w * snapshots[k0 + 1].m[i];
  return {rho, m};
}

}  // namespace eulerkin
