#ifndef EULERKIN_DEGIORGI_HPP
#define EULERKIN_DEGIORGI_HPP

#include <optional>
#include <vector>

#include "eulerkin/solver.hpp"

namespace eulerkin {

/// Which one-sided oscillation is monitored against the reference state:
/// (lambda1(bar_u) - lambda1(u))_+ below, or (lambda2(u) - lambda2(bar_u))_+
/// above.
enum class OneSided { below_lambda1, above_lambda2 };

struct DeGiorgiOptions {
  double scale = 0.1;  ///< B_1 radius in (t,x); B_2 has radius 2*scale
  int k_max = 12;
  std::optional<double> eta;  ///< cut range; default 2 * measured sup on B_1
  double eps_target = 1e-2;   ///< threshold the monitor asserts smallness against
};

/// Nested-ball iteration data for one monitored point.
struct DeGiorgiReport {
  double theta0 = 1.0 / 7.0;
  double alpha = 1.0 / 21.0;  ///< alpha^{-1} = (7 theta + 2)/theta at theta = theta0
  OneSided direction = OneSided::above_lambda2;
  double t_center = 0.0, x_center = 0.0, scale = 0.0;
  double Gamma = 0.0;  ///< measured ||rho|| + ||m/rho|| on B_2
  double M = 0.0;      ///< measured min rho on B_2
  double eps = 0.0;    ///< one-sided L^1 oscillation on B_2 (rescaled coordinates)
  double eta = 0.0;    ///< cut range used for the level ladder
  double sup_b1 = 0.0; ///< brute-force grid sup of the oscillation on B_1
  std::vector<double> r_k;
  std::vector<double> l_k;
  std::vector<double> U_k;  ///< truncated tail masses, one per ladder rung
  bool eps_below_target = false;
  bool truncation_vanishes = false;  ///< U_k reaches <= 1e-3 U_0
};

/// Empirical eps-regularity monitor: measures the one-sided L^1 oscillation on B_2,
/// runs the nested-ball/rising-cut iteration, and reports the brute-force sup
/// on B_1. Balls are Euclidean in (t,x) after rescaling by `scale`.
DeGiorgiReport degiorgi_monitor(const SpaceTimeRecord& rec, double t_center, double x_center,
                                const ConservedState& bar_u, OneSided direction,
                                DeGiorgiOptions opts = {});

/// Least-squares slope of log(sup) against log(eps) over a run family.
double fit_exponent(const std::vector<std::pair<double, double>>& eps_sup);

}  // namespace eulerkin

#endif
