#ifndef EULERKIN_TRACE_HPP
#define EULERKIN_TRACE_HPP

#include <string>
#include <vector>

#include "eulerkin/mollifier.hpp"
#include "eulerkin/solver.hpp"

namespace eulerkin {

/// Lipschitz curve sampled on a time grid; the container for shock lines,
/// probe curves and extracted characteristics.
struct LipschitzCurve {
  std::vector<double> t;
  std::vector<double> h;
  double lip = 0.0;

  static LipschitzCurve line(const SpaceTimeRecord& rec, double x0, double speed);
  static LipschitzCurve from_samples(std::vector<double> t, std::vector<double> h);

  double at(double time) const;         ///< linear interpolation
  double derivative(double time) const; ///< finite-difference hdot
};

enum class TraceSide { left, right, both };

struct TraceOptions {
  double band = 0.0;         ///< trace band y0 (average over y in (0, y0]); 0 -> 2 dx
  double ladder_span = 0.0;  ///< largest ladder offset; 0 -> min(quarter domain, boundary gap)
  double verify_tol = 0.0;   ///< E(k_max) acceptance; 0 -> 0.02 * time span
};

/// Trace candidates along a curve plus the dyadic trace-error ladders.
/// E(k) = sup over offsets y in (0, 1/k) of the time-integrated distance to
/// the trace state; uniform_E(k) exchanges the sup with the time integral.
struct TraceReport {
  std::vector<double> times;
  std::vector<ConservedState> u_plus;
  std::vector<ConservedState> u_minus;
  std::vector<double> k;
  std::vector<double> E;
  std::vector<double> uniform_E;
  double band = 0.0;
  TraceSide side = TraceSide::both;
  bool verified = false;
  double verify_tol = 0.0;

  ConservedState mean_plus() const;
  ConservedState mean_minus() const;
};

TraceReport extract_trace(const SpaceTimeRecord& rec, const LipschitzCurve& curve,
                          TraceSide side = TraceSide::both, TraceOptions opts = {});

enum class PointLabel { continuous, shock };

struct DichotomyOptions {
  double cont_tol = 5e-2;        ///< |u+ - u-|_1 below this is CONTINUOUS
  std::vector<double> eps_list;  ///< Psi_eps pairing widths; empty -> {16,32,64} dx
  int kernel_nodes = 16;
};

struct DichotomyPoint {
  double t = 0.0;
  PointLabel label = PointLabel::continuous;
  double jump_norm = 0.0;
  double hdot = 0.0;
  double rh_residual = 0.0;       ///< |hdot [u] - [f(u)]|_1 from trace states
  double entropy_residual = 0.0;  ///< ([q] - hdot [eta])_+ for the energy pair
};

/// Weak-form jump estimate through the antisymmetric mollifier pairing.
struct EpsPairing {
  double eps = 0.0;
  double jump_rho = 0.0;
  double jump_m = 0.0;
  double rh_residual = 0.0;  ///< |mean(hdot) j_eps - [flux]_eps|_1
};

struct DichotomyReport {
  std::vector<DichotomyPoint> points;
  double shock_fraction = 0.0;
  double continuous_fraction = 0.0;
  double mean_rh_residual = 0.0;       ///< over SHOCK times
  double mean_entropy_residual = 0.0;  ///< over SHOCK times
  double trace_jump_rho = 0.0;         ///< time-mean of (u+ - u-)
  double trace_jump_m = 0.0;
  std::vector<EpsPairing> pairings;
  double pairing_vs_trace = 0.0;  ///< relative gap at the smallest eps
  PointLabel overall = PointLabel::continuous;
};

DichotomyReport rh_dichotomy(const SpaceTimeRecord& rec, const LipschitzCurve& curve,
                             const TraceReport& trace, DichotomyOptions opts = {});

/// Curve-following rescaled patch u(t0 + eta tau, h(t0 + eta tau) + eta y).
struct BlowupPatch {
  double t0 = 0.0;
  double eta = 0.0;
  Eigen::ArrayXd tau;  ///< in [-tau_half, tau_half]
  Eigen::ArrayXd y;    ///< in [-1, 1]
  Eigen::MatrixXd rho;
  Eigen::MatrixXd m;
};

BlowupPatch blowup_rescale(const SpaceTimeRecord& rec, const LipschitzCurve& curve, double t0,
                           double eta, double tau_half = 1.0, int n_tau = 33, int n_y = 65);

struct HalfSpaceDistance {
  double minus = 0.0;  ///< mean |u - u_minus| over {y <= -margin}
  double plus = 0.0;   ///< mean |u - u_plus| over {y >= +margin}
};

HalfSpaceDistance half_space_distance(const BlowupPatch& patch, const ConservedState& u_minus,
                                      const ConservedState& u_plus, double margin = 0.125);

}  // namespace eulerkin

#endif
