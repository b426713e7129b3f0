#ifndef EULERKIN_MOLLIFIER_HPP
#define EULERKIN_MOLLIFIER_HPP

#include <Eigen/Dense>

namespace eulerkin {

/// Smooth bump psi supported in (0,1) with unit integral, discretized as a
/// normalized quadrature: nodes s_i in (0,1), weights w_i >= 0, sum w = 1
/// exactly. psi_eps(y) = psi(y/eps)/eps samples then read eps * s_i.
struct MollifierKernel {
  double eps = 0.0;
  Eigen::ArrayXd nodes;    ///< in (0,1)
  Eigen::ArrayXd weights;  ///< sum exactly 1

  static MollifierKernel bump(double eps, int n_nodes = 24);

  /// Quadrature of psi_eps over its support (1 by construction).
  double integral() const { return weights.sum(); }
};

}  // namespace eulerkin

#endif
