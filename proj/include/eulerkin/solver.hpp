#ifndef EULERKIN_SOLVER_HPP
#define EULERKIN_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "eulerkin/dissipation.hpp"
#include "eulerkin/grid.hpp"
#include "eulerkin/state.hpp"

namespace eulerkin {

enum class Scheme { kinetic, godunov };

inline std::string to_string(Scheme s) { return s == Scheme::kinetic ? "kinetic" : "godunov"; }

/// Collapse-dissipation logging plan. v_nodes = 0 keeps only the per-step
/// energy totals (always available in the audits).
struct DissipationLogConfig {
  int v_nodes = 0;
  int t_slabs = 128;
  int x_bins = 0;  ///< 0 -> min(n_cells, 512)
};

struct SchemeConfig {
  double cfl = 0.5;
  double t_end = 0.0;
  Scheme scheme = Scheme::kinetic;
  int snapshot_stride = 1;
  double rho_floor = kDefaultRhoFloor;
  double velocity_margin = 1.05;
  std::optional<double> velocity_bound;  ///< override for L
  DissipationLogConfig dissipation;
};

/// Per-step conservation / invariant-region / entropy audit.
struct StepAudit {
  double t = 0.0;  ///< time after the step
  double mass = 0.0;
  double momentum = 0.0;
  double min_lambda1 = 0.0;  ///< over non-vacuum cells
  double max_lambda2 = 0.0;
  double entropy_total = 0.0;           ///< sum of energy eta * dx
  double collapse_dissipation = 0.0;    ///< total energy drop * dx this step
  double min_rho = 0.0;
  int vacuum_cells = 0;
};

/// Full (t,x)-history of a run: strided snapshots, per-step audits, and
/// (kinetic scheme, when enabled) the binned collapse-dissipation log.
struct SpaceTimeRecord {
  Grid1D grid;
  Scheme scheme = Scheme::kinetic;
  double cfl = 0.5;
  double dt = 0.0;
  double velocity_bound = 0.0;  ///< L
  double rho_floor = kDefaultRhoFloor;
  std::vector<double> times;
  std::vector<ConservedField> snapshots;
  std::vector<StepAudit> audits;  ///< audits[k] = state after step k; [0] = initial
  std::optional<DissipationField> collapse_log;

  double t_begin() const { return times.front(); }
  double t_end() const { return times.back(); }

  /// Piecewise-constant in x, linear in t between snapshots. Throws
  /// GeometryError for t outside the recorded span.
  ConservedState at(double t, double x) const;

  /// Index of the last snapshot with time <= t (clamped to valid range).
  int snapshot_below(double t) const;

  /// Uniform spacing between snapshot times (stride * dt for interior ones).
  double snapshot_spacing() const;
};

/// One transport-collapse step output.
struct StepResult {
  ConservedField field;
  Eigen::ArrayXd dissipation;  ///< per-cell drop of int v^2/2 f dv (>= 0)
};

/// Exact free transport of the chi-interval field over dt (CFL <= 1) followed
/// by collapse back to the interval matching the transported 0th/1st moments.
/// When v_nodes/kernel_drops are given, kernel_drops(cell, node) receives the
/// per-cell collapse drop of int (v - v0)_+ f dv for every node v0.
StepResult transport_collapse_step(const ConservedField& f, const Grid1D& grid, double dt,
                                   double L, double rho_floor = kDefaultRhoFloor,
                                   const Eigen::ArrayXd* v_nodes = nullptr,
                                   Eigen::MatrixXd* kernel_drops = nullptr);

/// Conservative Godunov update with interface fluxes from the exact Riemann
/// solver sampled at xi = 0.
ConservedField godunov_step(const ConservedField& f, const Grid1D& grid, double dt,
                            double rho_floor = kDefaultRhoFloor);

/// Time integration producing snapshots every `snapshot_stride` steps (the
/// initial and final states are always recorded).
SpaceTimeRecord run(const ConservedField& initial, const Grid1D& grid, const SchemeConfig& cfg);

}  // namespace eulerkin

#endif
