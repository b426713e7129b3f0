#include "eulerkin/state.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace eulerkin {

Invariants riemann_invariants(double rho, double m, double rho_floor) {
  if (!(rho > rho_floor)) {
    std::ostringstream os;
    os << "riemann_invariants: vacuum state (rho = " << rho << " <= floor " << rho_floor << ")";
    throw VacuumError(os.str());
  }
  const double u = m / rho;
  return {u - 0.5 * rho, u + 0.5 * rho};
}

ConservedState from_invariants(double lambda1, double lambda2) {
  if (lambda1 > lambda2) {
    std::ostringstream os;
    os << "from_invariants: lambda1 = " << lambda1 << " > lambda2 = " << lambda2;
    throw OrderingError(os.str());
  }
  const double rho = lambda2 - lambda1;
  // (l2^2 - l1^2)/2 factored to avoid cancellation for thin intervals.
  const double m = rho * 0.5 * (lambda1 + lambda2);
  return {rho, m};
}

Moments kinetic_moments(double lambda1, double lambda2) {
  if (lambda1 > lambda2) {
    std::ostringstream os;
    os << "kinetic_moments: lambda1 = " << lambda1 << " > lambda2 = " << lambda2;
    throw OrderingError(os.str());
  }
  const double w = lambda2 - lambda1;
  const double rho = w;
  const double m = w * 0.5 * (lambda1 + lambda2);
  // (l2^3 - l1^3)/3 = w (l1^2 + l1 l2 + l2^2)/3, again factored.
  const double e2 = w * (lambda1 * lambda1 + lambda1 * lambda2 + lambda2 * lambda2) / 3.0;
  return {rho, m, e2};
}

StateBounds of_field_impl(const ConservedField& f, double rho_floor, double margin) {
  StateBounds b;
  double max_rho = 0.0, max_vel = 0.0, min_rho = std::numeric_limits<double>::infinity();
  double max_abs_lambda = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const double rho = f.rho[i];
    max_rho = std::max(max_rho, rho);
    min_rho = std::min(min_rho, rho);
    if (rho > rho_floor) {
      const auto inv = riemann_invariants(rho, f.m[i], rho_floor);
      max_vel = std::max(max_vel, std::abs(f.m[i] / rho));
      max_abs_lambda = std::max({max_abs_lambda, std::abs(inv.lambda1), std::abs(inv.lambda2)});
    }
  }
  b.Gamma = max_rho + max_vel;
  b.M = std::isfinite(min_rho) ? min_rho : 0.0;
  b.L = margin * max_abs_lambda;
  return b;
}

StateBounds StateBounds::of_field(const ConservedField& f, double rho_floor, double margin) {
  return of_field_impl(f, rho_floor, margin);
}

KineticIntervalField to_intervals(const ConservedField& f, double rho_floor, double margin) {
  KineticIntervalField k;
  const int n = f.size();
  k.lambda1.resize(n);
  k.lambda2.resize(n);
  double max_abs = 0.0;
  for (int i = 0; i < n; ++i) {
    if (f.rho[i] > rho_floor) {
      const auto inv = riemann_invariants(f.rho[i], f.m[i], rho_floor);
      k.lambda1[i] = inv.lambda1;
      k.lambda2[i] = inv.lambda2;
      max_abs = std::max({max_abs, std::abs(inv.lambda1), std::abs(inv.lambda2)});
    } else {
      k.lambda1[i] = 0.0;
      k.lambda2[i] = 0.0;
    }
  }
  k.L = margin * max_abs;
  return k;
}

ConservedField from_intervals(const KineticIntervalField& k) {
  const int n = static_cast<int>(k.lambda1.size());
  ConservedField f(n);
  for (int i = 0; i < n; ++i) {
    const auto u = from_invariants(k.lambda1[i], k.lambda2[i]);
    f.rho[i] = u.rho;
    f.m[i] = u.m;
  }
  return f;
}

double max_wave_speed(const ConservedField& f, double rho_floor) {
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    if (f.rho[i] > rho_floor) {
      const auto inv = riemann_invariants(f.rho[i], f.m[i], rho_floor);
      s = std::max({s, std::abs(inv.lambda1), std::abs(inv.lambda2)});
    }
  }
  return s;
}

}  // namespace eulerkin
