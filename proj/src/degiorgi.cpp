#include "eulerkin/degiorgi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eulerkin {

DeGiorgiReport degiorgi_monitor(const SpaceTimeRecord& rec, double t_center, double x_center,
                                const ConservedState& bar_u, OneSided direction,
                                DeGiorgiOptions opts) {
  const auto& g = rec.grid;
  const double s = opts.scale;
  if (!(s > 0.0)) throw ConfigError("degiorgi_monitor: scale must be positive");
  if (t_center - 2.0 * s < rec.t_begin() - 1e-12 || t_center + 2.0 * s > rec.t_end() + 1e-12 ||
      x_center - 2.0 * s < g.x_min - 1e-12 || x_center + 2.0 * s > g.x_max + 1e-12) {
    std::ostringstream os;
    os << "degiorgi_monitor: B_2(" << t_center << ", " << x_center << "; " << 2.0 * s
       << ") leaves the record domain";
    throw GeometryError(os.str());
  }
  const auto inv_bar = riemann_invariants(bar_u, rec.rho_floor);
  const double a = inv_bar.lambda1;
  const double b = inv_bar.lambda2;

  DeGiorgiReport rep;
  rep.direction = direction;
  rep.t_center = t_center;
  rep.x_center = x_center;
  rep.scale = s;

  // Gather grid samples inside B_2 in rescaled (tau, y) coordinates.
  struct Sample {
    double r2;  // tau^2 + y^2
    double l1, l2;
  };
  std::vector<Sample> samples;
  const double dx = g.dx();
  const double wt = rec.snapshot_spacing();
  const double measure = (dx * wt) / (s * s);
  double min_rho = std::numeric_limits<double>::infinity();
  double max_rho = 0.0, max_vel = 0.0;
  for (std::size_t kSnap = 0; kSnap < rec.times.size(); ++kSnap) {
    const double tau = (rec.times[kSnap] - t_center) / s;
    if (std::abs(tau) > 2.0) continue;
    const auto& f = rec.snapshots[kSnap];
    for (int i = 0; i < g.n_cells; ++i) {
      const double y = (g.center(i) - x_center) / s;
      const double r2 = tau * tau + y * y;
      if (r2 > 4.0) continue;
      min_rho = std::min(min_rho, f.rho[i]);
      if (f.rho[i] <= rec.rho_floor) {
        std::ostringstream os;
        os << "degiorgi_monitor: vacuum cell inside B_2 at t = " << rec.times[kSnap]
           << ", x = " << g.center(i);
        throw VacuumError(os.str());
      }
      const auto inv = riemann_invariants(f.rho[i], f.m[i], rec.rho_floor);
      max_rho = std::max(max_rho, f.rho[i]);
      max_vel = std::max(max_vel, std::abs(f.m[i] / f.rho[i]));
      samples.push_back({r2, inv.lambda1, inv.lambda2});
    }
  }
  if (samples.empty()) throw GeometryError("degiorgi_monitor: no grid samples inside B_2");
  rep.M = min_rho;
  rep.Gamma = max_rho + max_vel;

  const bool above = direction == OneSided::above_lambda2;
  auto oscillation = [&](const Sample& smp) {
    return above ? std::max(smp.l2 - b, 0.0) : std::max(a - smp.l1, 0.0);
  };
  // Truncated v-mass of f over the level cut l: int over the tail interval.
  auto truncated = [&](const Sample& smp, double l) {
    if (above) return std::max(smp.l2 - std::max(smp.l1, b + l), 0.0);
    return std::max(std::min(smp.l2, a - l) - smp.l1, 0.0);
  };

  double eps = 0.0;
  double sup1 = 0.0;
  for (const auto& smp : samples) {
    eps += oscillation(smp) * measure;
    if (smp.r2 <= 1.0) sup1 = std::max(sup1, oscillation(smp));
  }
  rep.eps = eps;
  rep.sup_b1 = sup1;
  rep.eta = opts.eta.value_or(std::max(2.0 * sup1, 1e-10));
  rep.eps_below_target = eps < opts.eps_target;

  for (int k = 0; k <= opts.k_max; ++k) {
    const double rk = 1.0 + std::pow(2.0, -k);
    const double lk = rep.eta * (1.0 - std::pow(2.0, -k));
    double Uk = 0.0;
    for (const auto& smp : samples)
      if (smp.r2 <= rk * rk) Uk += truncated(smp, lk) * measure;
    rep.r_k.push_back(rk);
    rep.l_k.push_back(lk);
    rep.U_k.push_back(Uk);
  }
  const double U0 = rep.U_k.front();
  rep.truncation_vanishes = rep.U_k.back() <= 1e-3 * U0 + 1e-15;
  return rep;
}

double fit_exponent(const std::vector<std::pair<double, double>>& eps_sup) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& [e, s] : eps_sup) {
    if (!(e > 0.0) || !(s > 0.0)) continue;
    const double x = std::log(e), y = std::log(s);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw ConfigError("fit_exponent: need at least two positive (eps, sup) pairs");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace eulerkin
