#ifndef EULERKIN_PRESETS_HPP
#define EULERKIN_PRESETS_HPP

#include <string>

#include "eulerkin/state.hpp"

namespace eulerkin {

/// Initial-data generator specification.
struct PresetSpec {
  std::string id = "riemann";  ///< riemann | smooth_sine | shock_pair | random_linfty

  // riemann
  ConservedState left{1.0, 0.0};
  ConservedState right{1.0, 0.0};
  double split = 0.5;

  // smooth_sine: rho = rho0 + amplitude sin(2 pi (x - x_min)/length), m = m0 rho
  double amplitude = 0.1;
  double rho0 = 1.0;
  double m0 = 0.0;

  // shock_pair: base state, a 1-shock at x1 up to rho_mid, then a 2-shock
  // back down to rho_right at x2 (both Lax-admissible by construction)
  double rho_mid = 2.0;
  double rho_right = 1.2;
  double x1 = 0.0;  ///< 0 -> one third of the domain
  double x2 = 0.0;  ///< 0 -> two thirds

  // random_linfty: seeded piecewise-constant data within bounds
  unsigned seed = 0;
  int pieces = 8;
  double rho_min = 0.3;
  double rho_max = 2.0;
  double u_max = 0.5;
};

ConservedField make_initial(const PresetSpec& spec, const Grid1D& grid);

}  // namespace eulerkin

#endif
