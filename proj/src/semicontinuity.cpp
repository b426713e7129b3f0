#include "eulerkin/semicontinuity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eulerkin {

std::vector<SemicontinuityPoint> semicontinuity_check(
    const SpaceTimeRecord& rec, const std::vector<std::pair<double, double>>& points,
    SemicontinuityOptions opts) {
  const auto& g = rec.grid;
  const double dx = g.dx();
  const double base = opts.base_radius > 0.0 ? opts.base_radius : 2.0 * dx;
  const double eq_tol = opts.eq_tol > 0.0 ? opts.eq_tol : 5.0 * std::sqrt(dx);
  const double wt = rec.snapshot_spacing();

  std::vector<SemicontinuityPoint> out;
  out.reserve(points.size());
  for (const auto& [tc, xc] : points) {
    SemicontinuityPoint p;
    p.t = tc;
    p.x = xc;

    // Radii from largest to smallest, all required to stay inside the domain.
    std::vector<double> radii;
    for (int j = opts.ladder - 1; j >= 0; --j) radii.push_back(base * std::pow(2.0, j));
    const double rmax = radii.front();
    if (tc - rmax < rec.t_begin() - 1e-12 || tc + rmax > rec.t_end() + 1e-12 ||
        xc - rmax < g.x_min - 1e-12 || xc + rmax > g.x_max + 1e-12) {
      p.evaluable = false;
      out.push_back(p);
      continue;
    }

    struct BallStats {
      double mean_l1 = 0, mean_l2 = 0, mean_rho = 0, mean_m = 0;
      double min_l1 = std::numeric_limits<double>::infinity();
      double max_l2 = -std::numeric_limits<double>::infinity();
      double max_rho = -std::numeric_limits<double>::infinity();
      double min_m = std::numeric_limits<double>::infinity();
      double max_m = -std::numeric_limits<double>::infinity();
      double defect = 0;
      double area = 0;
      bool vacuum = false;
    };

    auto ball_stats = [&](double r) {
      BallStats s;
      // First pass: means.
      double sl1 = 0, sl2 = 0, srho = 0, sm = 0, area = 0;
      for (std::size_t k = 0; k < rec.times.size(); ++k) {
        const double dt = rec.times[k] - tc;
        if (std::abs(dt) > r) continue;
        const auto& f = rec.snapshots[k];
        for (int i = 0; i < g.n_cells; ++i) {
          const double dxc = g.center(i) - xc;
          if (dt * dt + dxc * dxc > r * r) continue;
          if (f.rho[i] <= rec.rho_floor) {
            s.vacuum = true;
            continue;
          }
          const auto inv = riemann_invariants(f.rho[i], f.m[i], rec.rho_floor);
          const double w = dx * wt;
          sl1 += w * inv.lambda1;
          sl2 += w * inv.lambda2;
          srho += w * f.rho[i];
          sm += w * f.m[i];
          area += w;
          s.min_l1 = std::min(s.min_l1, inv.lambda1);
          s.max_l2 = std::max(s.max_l2, inv.lambda2);
          s.max_rho = std::max(s.max_rho, f.rho[i]);
          s.min_m = std::min(s.min_m, f.m[i]);
          s.max_m = std::max(s.max_m, f.m[i]);
        }
      }
      s.area = area;
      if (area <= 0.0) return s;
      s.mean_l1 = sl1 / area;
      s.mean_l2 = sl2 / area;
      s.mean_rho = srho / area;
      s.mean_m = sm / area;
      // Second pass: mean oscillation of the invariants.
      double d = 0;
      for (std::size_t k = 0; k < rec.times.size(); ++k) {
        const double dt = rec.times[k] - tc;
        if (std::abs(dt) > r) continue;
        const auto& f = rec.snapshots[k];
        for (int i = 0; i < g.n_cells; ++i) {
          const double dxc = g.center(i) - xc;
          if (dt * dt + dxc * dxc > r * r) continue;
          if (f.rho[i] <= rec.rho_floor) continue;
          const auto inv = riemann_invariants(f.rho[i], f.m[i], rec.rho_floor);
          d += (std::abs(inv.lambda1 - s.mean_l1) + std::abs(inv.lambda2 - s.mean_l2)) * dx * wt;
        }
      }
      s.defect = d / area;
      return s;
    };

    bool vacuum = false, empty = false;
    for (double r : radii) {
      const auto s = ball_stats(r);
      if (s.vacuum) vacuum = true;
      if (s.area <= 0.0) empty = true;
      p.radii.push_back(r);
      p.vmo_defect.push_back(s.defect);
      if (r == radii.back() && !empty && !vacuum) {
        p.rho_hat = s.mean_rho;
        p.rho_bar = s.max_rho;
        p.l1_hat = s.mean_l1;
        p.l1_lower = s.min_l1;
        p.l2_hat = s.mean_l2;
        p.l2_bar = s.max_l2;
        p.m_hat = s.mean_m;
        p.m_bar = s.max_m;
        p.m_lower = s.min_m;
        if (s.min_l1 >= 0.0)
          p.m_regime = +1;
        else if (s.max_l2 <= 0.0)
          p.m_regime = -1;
      }
    }
    if (vacuum || empty) {
      p.evaluable = false;
      out.push_back(p);
      continue;
    }

    // VMO: small defect at the smallest radius, not growing along the ladder.
    p.vmo = p.vmo_defect.back() <= opts.vmo_tol &&
            p.vmo_defect.back() <= p.vmo_defect.front() + 1e-10;
    p.envelope_order_ok = p.rho_hat <= p.rho_bar + 1e-12 && p.l1_lower <= p.l1_hat + 1e-12 &&
                          p.l2_hat <= p.l2_bar + 1e-12;
    if (p.vmo) {
      p.rho_ok = std::abs(p.rho_hat - p.rho_bar) <= eq_tol;
      p.l1_ok = std::abs(p.l1_hat - p.l1_lower) <= eq_tol;
      p.l2_ok = std::abs(p.l2_hat - p.l2_bar) <= eq_tol;
      if (p.m_regime == +1)
        p.m_ok = std::abs(p.m_hat - p.m_bar) <= eq_tol;
      else if (p.m_regime == -1)
        p.m_ok = std::abs(p.m_hat - p.m_lower) <= eq_tol;
      p.pass = p.rho_ok && p.l1_ok && p.l2_ok && p.m_ok && p.envelope_order_ok;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace eulerkin
