#include "eulerkin/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace eulerkin {

namespace {

double pressure(double rho) { return rho * rho * rho / 12.0; }

double velocity(const ConservedState& u) { return u.m / u.rho; }

/// u* on the Hugoniot branch through (rho0, u0) at density rho (> rho0):
/// u* = u0 -/+ sqrt((p - p0)(rho - rho0)/(rho rho0)).
double hugoniot_velocity(double rho0, double u0, double rho, int family) {
  const double jump = (pressure(rho) - pressure(rho0)) * (rho - rho0) / (rho * rho0);
  const double root = std::sqrt(std::max(jump, 0.0));
  return family == 1 ? u0 - root : u0 + root;
}

/// d(u*)/d(rho) along the shock branch; the limit at rho -> rho0 is
/// -/+ c0/rho0 = -/+ 1/2, matching the rarefaction branch slope.
double hugoniot_velocity_deriv(double rho0, double rho, int family) {
  const double sign = family == 1 ? -1.0 : 1.0;
  if (rho - rho0 < 1e-9 * rho0) return sign * 0.5;
  // g(rho) = (p - p0)(1/rho0 - 1/rho); g' = p'(rho)(1/rho0 - 1/rho) + (p - p0)/rho^2
  const double g = (pressure(rho) - pressure(rho0)) * (1.0 / rho0 - 1.0 / rho);
  const double gprime = 0.25 * rho * rho * (1.0 / rho0 - 1.0 / rho) +
                        (pressure(rho) - pressure(rho0)) / (rho * rho);
  return sign * 0.5 * gprime / std::sqrt(std::max(g, 1e-300));
}

/// Velocity reachable from `outer` through a single family-i wave with star
/// density rho: linear (rarefaction) branch below outer.rho, Hugoniot above.
double wave_curve(const ConservedState& outer, double rho, int family) {
  const double u0 = velocity(outer);
  if (rho <= outer.rho) {
    const double d = 0.5 * (outer.rho - rho);
    return family == 1 ? u0 + d : u0 - d;
  }
  return hugoniot_velocity(outer.rho, u0, rho, family);
}

double wave_curve_deriv(const ConservedState& outer, double rho, int family) {
  if (rho <= outer.rho) return family == 1 ? -0.5 : 0.5;
  return hugoniot_velocity_deriv(outer.rho, rho, family);
}

ConservedState vacuum_state() { return {0.0, 0.0}; }

/// Full fan connecting `outer` down to vacuum; spans [lambda1, lambda2](outer)
/// since the fan's own invariant sweeps up to the constant one at rho = 0.
Wave fan_to_vacuum(const ConservedState& outer, int family) {
  Wave w;
  w.family = family;
  w.kind = WaveKind::rarefaction;
  const auto inv = riemann_invariants(outer);
  w.speed_lo = inv.lambda1;
  w.speed_hi = inv.lambda2;
  w.upstream = outer;
  w.downstream = vacuum_state();
  return w;
}

}  // namespace

HugoniotPoint hugoniot_state(const ConservedState& outer, double rho_star, int family) {
  if (family != 1 && family != 2) throw ConfigError("hugoniot_state: family must be 1 or 2");
  if (!(outer.rho > 0.0) || !(rho_star > 0.0))
    throw VacuumError("hugoniot_state: requires positive densities");
  if (rho_star < outer.rho * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "hugoniot_state: rho_star = " << rho_star << " < rho = " << outer.rho
       << " is the rarefaction side of the family-" << family << " curve";
    throw AdmissibilityError(os.str());
  }
  const double u0 = velocity(outer);
  const double ustar = hugoniot_velocity(outer.rho, u0, rho_star, family);
  const double mstar = rho_star * ustar;
  double s;
  if (std::abs(rho_star - outer.rho) <= 1e-12 * outer.rho) {
    const auto inv = riemann_invariants(outer);
    s = family == 1 ? inv.lambda1 : inv.lambda2;
  } else {
    s = (mstar - outer.m) / (rho_star - outer.rho);
  }
  return {mstar, s};
}

RiemannSolution solve_riemann(const ConservedState& uL, const ConservedState& uR,
                              double rho_floor) {
  if (uL.rho < 0.0 || uR.rho < 0.0) throw ConfigError("solve_riemann: negative density");
  RiemannSolution sol;
  sol.left = uL;
  sol.right = uR;
  const bool left_vac = uL.rho <= rho_floor;
  const bool right_vac = uR.rho <= rho_floor;
  const double inf = std::numeric_limits<double>::infinity();

  if (left_vac && right_vac) {
    sol.vacuum = true;
    sol.vacuum_lo = -inf;
    sol.vacuum_hi = inf;
    return sol;
  }
  if (left_vac) {
    sol.vacuum = true;
    const auto inv = riemann_invariants(uR, rho_floor);
    sol.vacuum_lo = -inf;
    sol.vacuum_hi = inv.lambda1;
    sol.waves.push_back(fan_to_vacuum(uR, 2));
    return sol;
  }
  if (right_vac) {
    sol.vacuum = true;
    const auto inv = riemann_invariants(uL, rho_floor);
    sol.vacuum_lo = inv.lambda2;
    sol.vacuum_hi = inf;
    sol.waves.push_back(fan_to_vacuum(uL, 1));
    return sol;
  }

  const auto invL = riemann_invariants(uL, rho_floor);
  const auto invR = riemann_invariants(uR, rho_floor);

  // Vacuum opens exactly when the rarefaction capacity is exhausted:
  // u_R - u_L >= (rho_L + rho_R)/2, i.e. lambda1(uR) >= lambda2(uL).
  if (invR.lambda1 >= invL.lambda2) {
    sol.vacuum = true;
    sol.vacuum_lo = invL.lambda2;
    sol.vacuum_hi = invR.lambda1;
    sol.waves.push_back(fan_to_vacuum(uL, 1));
    sol.waves.push_back(fan_to_vacuum(uR, 2));
    return sol;
  }

  // Middle state: phi1(rho) - phi2(rho) = 0 is strictly decreasing in rho.
  auto g = [&](double rho) { return wave_curve(uL, rho, 1) - wave_curve(uR, rho, 2); };
  double lo = 1e-14;
  double hi = std::max(uL.rho, uR.rho);
  if (g(hi) > 0.0) {
    int grow = 0;
    while (g(hi) > 0.0) {
      hi *= 2.0;
      if (++grow > 200) {
        std::ostringstream os;
        os << "solve_riemann: no sign change in bracket [" << lo << ", " << hi
           << "], g = [" << g(lo) << ", " << g(hi) << "]";
        throw NumericError(os.str());
      }
    }
  }
  double a = lo, b = hi;
  for (int it = 0; it < 200 && (b - a) > 1e-15 * std::max(1.0, b); ++it) {
    const double mid = 0.5 * (a + b);
    (g(mid) > 0.0 ? a : b) = mid;
  }
  double rho_star = 0.5 * (a + b);
  // Newton polish on the velocity mismatch (tolerance 1e-12 in u*).
  for (int it = 0; it < 8; ++it) {
    const double val = g(rho_star);
    if (std::abs(val) < 1e-13) break;
    const double der = wave_curve_deriv(uL, rho_star, 1) - wave_curve_deriv(uR, rho_star, 2);
    if (der == 0.0) break;
    const double next = rho_star - val / der;
    if (!(next > a && next < b)) break;
    rho_star = next;
  }
  const double u_star = 0.5 * (wave_curve(uL, rho_star, 1) + wave_curve(uR, rho_star, 2));
  ConservedState star{rho_star, rho_star * u_star};
  sol.star = star;

  const double rel_tol = 1e-12;
  // Family 1 wave between uL and star.
  if (rho_star > uL.rho * (1.0 + rel_tol)) {
    const auto h = hugoniot_state(uL, rho_star, 1);
    Wave w{1, WaveKind::shock, h.speed, h.speed, uL, star};
    sol.waves.push_back(w);
  } else if (rho_star < uL.rho * (1.0 - rel_tol)) {
    const auto inv_star = riemann_invariants(star, rho_floor * 0.0 + 1e-300);
    Wave w{1, WaveKind::rarefaction, invL.lambda1, inv_star.lambda1, uL, star};
    sol.waves.push_back(w);
  } else {
    Wave w{1, WaveKind::none, invL.lambda1, invL.lambda1, uL, star};
    sol.waves.push_back(w);
  }
  // Family 2 wave between star and uR.
  if (rho_star > uR.rho * (1.0 + rel_tol)) {
    const auto h = hugoniot_state(uR, rho_star, 2);
    Wave w{2, WaveKind::shock, h.speed, h.speed, uR, star};
    sol.waves.push_back(w);
  } else if (rho_star < uR.rho * (1.0 - rel_tol)) {
    const auto inv_star = riemann_invariants(star, 1e-300);
    Wave w{2, WaveKind::rarefaction, inv_star.lambda2, invR.lambda2, uR, star};
    sol.waves.push_back(w);
  } else {
    Wave w{2, WaveKind::none, invR.lambda2, invR.lambda2, uR, star};
    sol.waves.push_back(w);
  }
  return sol;
}

ConservedState sample_riemann(const RiemannSolution& sol, double xi) {
  if (sol.vacuum) {
    if (xi >= sol.vacuum_lo && xi <= sol.vacuum_hi) return vacuum_state();
  }
  ConservedState cur = sol.left;
  for (const Wave& w : sol.waves) {
    // Spatially, family-1 waves have their upstream state on the left.
    const ConservedState post = (w.family == 1) ? w.downstream : w.upstream;
    if (xi < w.speed_lo) return cur;
    if (xi <= w.speed_hi) {
      if (w.kind == WaveKind::shock || w.kind == WaveKind::none) return post;
      // Rarefaction interior: the opposite invariant is constant across the
      // fan and the fan's own invariant equals xi.
      const auto inv_up = riemann_invariants(w.upstream);
      if (w.family == 1) {
        const double l2 = inv_up.lambda2;
        return from_invariants(xi, l2);
      }
      const double l1 = inv_up.lambda1;
      return from_invariants(l1, xi);
    }
    cur = post;
  }
  return cur;
}

double max_signal_speed(const RiemannSolution& sol) {
  double s = 0.0;
  for (const Wave& w : sol.waves)
    s = std::max({s, std::abs(w.speed_lo), std::abs(w.speed_hi)});
  return s;
}

RhResidual rh_residual(const ConservedState& left, const ConservedState& right, double s) {
  return {s * (right.rho - left.rho) - (right.m - left.m),
          s * (right.m - left.m) - (momentum_flux(right) - momentum_flux(left))};
}

}  // namespace eulerkin
