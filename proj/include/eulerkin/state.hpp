#ifndef EULERKIN_STATE_HPP
#define EULERKIN_STATE_HPP

#include <Eigen/Dense>
#include <cmath>

#include "eulerkin/errors.hpp"
#include "eulerkin/grid.hpp"

namespace eulerkin {

/// Density floor below which a cell is treated as true vacuum.
inline constexpr double kDefaultRhoFloor = 1e-12;

/// One cell of conserved quantities (mass and momentum density).
struct ConservedState {
  double rho = 0.0;
  double m = 0.0;
};

/// Riemann invariants / characteristic speeds of a non-vacuum state.
struct Invariants {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

/// Zeroth, first and second velocity moments of a chi-interval.
struct Moments {
  double rho = 0.0;
  double m = 0.0;
  double e2 = 0.0;
};

/// lambda_1 = m/rho - rho/2, lambda_2 = m/rho + rho/2. Throws VacuumError at
/// or below the floor: the invariants are undefined at vacuum.
Invariants riemann_invariants(double rho, double m, double rho_floor = kDefaultRhoFloor);

inline Invariants riemann_invariants(const ConservedState& u,
                                     double rho_floor = kDefaultRhoFloor) {
  return riemann_invariants(u.rho, u.m, rho_floor);
}

/// rho = lambda2 - lambda1, m = (lambda2^2 - lambda1^2)/2.
ConservedState from_invariants(double lambda1, double lambda2);

/// Closed-form v-moments of chi_[lambda1,lambda2]; e2 equals the momentum
/// flux m^2/rho + rho^3/12 whenever rho > 0.
Moments kinetic_moments(double lambda1, double lambda2);

/// Momentum flux m^2/rho + rho^3/12, with the vacuum limit 0.
inline double momentum_flux(double rho, double m, double rho_floor = kDefaultRhoFloor) {
  if (rho <= rho_floor) return 0.0;
  return m * m / rho + rho * rho * rho / 12.0;
}

inline double momentum_flux(const ConservedState& u, double rho_floor = kDefaultRhoFloor) {
  return momentum_flux(u.rho, u.m, rho_floor);
}

/// Per-cell (rho, m) on a grid. Invariants: rho >= 0 and m = 0 wherever
/// rho is below the vacuum floor.
struct ConservedField {
  Eigen::ArrayXd rho;
  Eigen::ArrayXd m;

  ConservedField() = default;
  explicit ConservedField(int n) : rho(Eigen::ArrayXd::Zero(n)), m(Eigen::ArrayXd::Zero(n)) {}

  int size() const { return static_cast<int>(rho.size()); }
  ConservedState cell(int i) const { return {rho[i], m[i]}; }
};

/// The exact kinetic representation: per-cell chi-interval endpoints plus
/// the global velocity support bound L.
struct KineticIntervalField {
  Eigen::ArrayXd lambda1;
  Eigen::ArrayXd lambda2;
  double L = 0.0;
};

/// Bounds describing the state family of a run.
struct StateBounds {
  double Gamma = 0.0;  ///< bound on ||rho||_inf + ||m/rho||_inf
  double M = 0.0;      ///< lower density bound (0 allowed)
  double L = 0.0;      ///< velocity support bound: |lambda_i| <= L

  static StateBounds of_field(const ConservedField& f, double rho_floor = kDefaultRhoFloor,
                              double margin = 1.05);
};

/// chi-interval endpoints of every cell; vacuum cells get the empty interval
/// [0, 0]. L defaults to the max |lambda_i| times the margin.
KineticIntervalField to_intervals(const ConservedField& f, double rho_floor = kDefaultRhoFloor,
                                  double margin = 1.05);

/// Moments back to a conserved field (rho = width, m = width * midpoint).
ConservedField from_intervals(const KineticIntervalField& k);

/// Max |lambda_i| over the non-vacuum cells of a field (0 if all vacuum).
double max_wave_speed(const ConservedField& f, double rho_floor = kDefaultRhoFloor);

}  // namespace eulerkin

#endif
