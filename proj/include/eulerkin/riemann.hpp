#ifndef EULERKIN_RIEMANN_HPP
#define EULERKIN_RIEMANN_HPP

#include <optional>
#include <vector>

#include "eulerkin/state.hpp"

namespace eulerkin {

enum class WaveKind { shock, rarefaction, none };

/// One self-similar wave. For shocks speed_lo == speed_hi. "upstream" is the
/// state the wave propagates into (the left state for family 1, the right
/// state for family 2); Lax then reads l1(down) <= s <= l1(up) for family 1
/// and l2(up) <= s <= l2(down) for family 2.
struct Wave {
  int family = 1;  ///< 1 or 2
  WaveKind kind = WaveKind::none;
  double speed_lo = 0.0;
  double speed_hi = 0.0;
  ConservedState upstream;
  ConservedState downstream;
};

/// Self-similar entropy solution of a Riemann problem.
struct RiemannSolution {
  ConservedState left;
  ConservedState right;
  std::vector<Wave> waves;  ///< sorted by speed
  std::optional<ConservedState> star;
  bool vacuum = false;
  double vacuum_lo = 0.0;  ///< vacuum region [vacuum_lo, vacuum_hi] in xi = x/t
  double vacuum_hi = 0.0;
};

struct HugoniotPoint {
  double m = 0.0;
  double speed = 0.0;
};

/// Lax-admissible Hugoniot branch through `outer` at density rho_star.
/// For family 1 `outer` is the left (upstream) state and the shock moves to
/// a denser star state on its right; family 2 is the mirror image with
/// `outer` the right state. rho_star below outer.rho has no admissible
/// branch and raises AdmissibilityError.
HugoniotPoint hugoniot_state(const ConservedState& outer, double rho_star, int family);

/// Wave-curve construction of the exact solution; vacuum appears exactly
/// when m_R/rho_R - m_L/rho_L >= (rho_L + rho_R)/2.
RiemannSolution solve_riemann(const ConservedState& uL, const ConservedState& uR,
                              double rho_floor = kDefaultRhoFloor);

/// State on the ray x/t = xi.
ConservedState sample_riemann(const RiemannSolution& sol, double xi);

/// Largest |wave speed| of the solution (for CFL and domain sizing).
double max_signal_speed(const RiemannSolution& sol);

/// Rankine-Hugoniot defect s[u] - [f(u)] of a jump (left, right) at speed s.
struct RhResidual {
  double mass = 0.0;
  double momentum = 0.0;
};
RhResidual rh_residual(const ConservedState& left, const ConservedState& right, double s);

}  // namespace eulerkin

#endif
