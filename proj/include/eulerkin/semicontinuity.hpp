#ifndef EULERKIN_SEMICONTINUITY_HPP
#define EULERKIN_SEMICONTINUITY_HPP

#include <vector>

#include "eulerkin/solver.hpp"

namespace eulerkin {

struct SemicontinuityOptions {
  double base_radius = 0.0;  ///< smallest ladder radius; 0 -> 2 dx
  int ladder = 5;            ///< radii base * 2^j, j = 0..ladder-1
  double vmo_tol = 0.05;     ///< VMO defect bound at the smallest radius
  double eq_tol = 0.0;       ///< envelope equality tolerance; 0 -> 5 sqrt(dx)
};

/// Envelope / VMO data of one sample point. Envelopes are discrete ess
/// sup/inf over the smallest ball of the radius ladder; hatted values are
/// the ball averages there.
struct SemicontinuityPoint {
  double t = 0.0, x = 0.0;
  bool evaluable = true;  ///< false near vacuum or when the ladder exits the domain
  bool vmo = false;
  std::vector<double> radii;
  std::vector<double> vmo_defect;  ///< mean oscillation of (l1, l2) per radius
  double rho_hat = 0.0, rho_bar = 0.0;
  double l1_hat = 0.0, l1_lower = 0.0;
  double l2_hat = 0.0, l2_bar = 0.0;
  double m_hat = 0.0, m_bar = 0.0, m_lower = 0.0;
  int m_regime = 0;  ///< +1: lower l1 >= 0; -1: upper l2 <= 0; 0: neither
  bool envelope_order_ok = false;
  bool rho_ok = false, l1_ok = false, l2_ok = false, m_ok = true;
  bool pass = false;  ///< all applicable equalities hold (VMO points only)
};

/// Pointwise structure checker: VMO defect ladder, envelope equalities for rho and
/// the invariants, and the sign-regime semicontinuity of m. Non-VMO points
/// are reported, not failed.
std::vector<SemicontinuityPoint> semicontinuity_check(const SpaceTimeRecord& rec,
                                                      const std::vector<std::pair<double, double>>& points,
                                                      SemicontinuityOptions opts = {});

}  // namespace eulerkin

#endif
