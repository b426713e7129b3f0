#ifndef EULERKIN_CHARACTERISTICS_HPP
#define EULERKIN_CHARACTERISTICS_HPP

#include <optional>
#include <vector>

#include "eulerkin/mollifier.hpp"
#include "eulerkin/solver.hpp"
#include "eulerkin/trace.hpp"

namespace eulerkin {

/// Capped characteristic velocity: min(lambda1, sigma) for family 1,
/// max(lambda2, sigma) for family 2. Cells at vacuum contribute the cap
/// (the neutral choice) and set *touched_vacuum.
double capped_velocity(const ConservedState& u, int family, double sigma, double rho_floor,
                       bool* touched_vacuum = nullptr);

/// Space-time mollified velocity
///   int int V(u(t - tau, x - y)) psi_eps(y) psi_eps(-tau) dy dtau,
/// whose kernel samples times in (t, t + eps) and positions in (x - eps, x).
/// The record must extend past t + eps.
double mollified_velocity(const SpaceTimeRecord& rec, const MollifierKernel& kernel, double t,
                          double x, int family, double sigma, bool* touched_vacuum = nullptr);

struct CharacteristicOptions {
  int family = 1;
  std::optional<double> sigma;            ///< default: ess sup lambda1 (inf lambda2)
  std::vector<double> eps_ladder;         ///< default {16, 8, 4} * dx
  std::optional<double> t_end;            ///< default: record end minus the largest eps
  double ode_step_factor = 0.25;          ///< ODE step = factor * eps
  int kernel_nodes = 16;
  double bound_tol = 5e-2;                ///< one-sided bound slack
  double trace_band = 0.0;                ///< band for the verification trace; 0 -> 16 dx
};

/// Mollified-ODE characteristic with its eps-ladder and verification pass.
struct CharacteristicRun {
  int family = 1;
  double sigma = 0.0;
  double x0 = 0.0;
  double v_inf = 0.0;  ///< ||V||_inf over the record
  std::vector<double> eps_ladder;
  std::vector<double> times;               ///< common output grid
  std::vector<std::vector<double>> h_eps;  ///< one curve per eps, on `times`
  std::vector<double> max_abs_hdot_eps;    ///< per eps, from the ODE integration
  std::vector<double> ladder_gaps;         ///< sup |h_eps_i - h_eps_{i+1}|
  bool ladder_converging = true;
  bool vacuum_flagged = false;

  std::vector<double> h;     ///< limit candidate (smallest eps)
  std::vector<double> hdot;  ///< finite differences on `times`
  std::vector<double> lambda1_plus;  ///< family-side invariant of the + trace
  double lambda_sup = 0.0;           ///< ess sup lambda1 (family 1) / ess inf lambda2
  std::vector<int> violation;        ///< per time: one-sided bound violated
  double violation_fraction = 0.0;
  std::optional<TraceReport> trace;
  std::optional<DichotomyReport> dichotomy;

  LipschitzCurve curve() const;
};

CharacteristicRun solve_characteristic(const SpaceTimeRecord& rec, double x0,
                                       CharacteristicOptions opts = {});

}  // namespace eulerkin

#endif
