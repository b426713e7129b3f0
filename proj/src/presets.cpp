#include "eulerkin/presets.hpp"

#include <cmath>
#include <random>

#include "eulerkin/riemann.hpp"

namespace eulerkin {

namespace {

ConservedField piecewise(const Grid1D& g, const std::vector<double>& breaks,
                         const std::vector<ConservedState>& states) {
  ConservedField f(g.n_cells);
  for (int i = 0; i < g.n_cells; ++i) {
    const double x = g.center(i);
    std::size_t k = 0;
    while (k < breaks.size() && x >= breaks[k]) ++k;
    f.rho[i] = states[k].rho;
    f.m[i] = states[k].m;
  }
  return f;
}

}  // namespace

ConservedField make_initial(const PresetSpec& spec, const Grid1D& grid) {
  if (spec.id == "riemann") {
    if (spec.left.rho < 0.0 || spec.right.rho < 0.0)
      throw ConfigError("riemann preset: negative density");
    return piecewise(grid, {spec.split}, {spec.left, spec.right});
  }
  if (spec.id == "smooth_sine") {
    if (spec.rho0 - std::abs(spec.amplitude) <= 0.0)
      throw ConfigError("smooth_sine preset: amplitude reaches vacuum");
    ConservedField f(grid.n_cells);
    for (int i = 0; i < grid.n_cells; ++i) {
      const double s = (grid.center(i) - grid.x_min) / grid.length();
      f.rho[i] = spec.rho0 + spec.amplitude * std::sin(2.0 * M_PI * s);
      f.m[i] = spec.m0 * f.rho[i];
    }
    return f;
  }
  if (spec.id == "shock_pair") {
    if (!(spec.rho_mid > spec.rho0) || !(spec.rho_mid > spec.rho_right))
      throw ConfigError("shock_pair preset: needs rho_mid > rho0 and rho_mid > rho_right");
    const ConservedState u0{spec.rho0, spec.m0};
    const auto h1 = hugoniot_state(u0, spec.rho_mid, 1);
    const ConservedState mid{spec.rho_mid, h1.m};
    // Right state on the 2-shock curve whose denser side is `mid`.
    const double pm = std::pow(spec.rho_mid, 3) / 12.0;
    const double pr = std::pow(spec.rho_right, 3) / 12.0;
    const double jump = (pm - pr) * (spec.rho_mid - spec.rho_right) / (spec.rho_mid * spec.rho_right);
    const double u_right = mid.m / mid.rho - std::sqrt(jump);
    const ConservedState right{spec.rho_right, spec.rho_right * u_right};
    const double a = spec.x1 != 0.0 ? spec.x1 : grid.x_min + grid.length() / 3.0;
    const double b = spec.x2 != 0.0 ? spec.x2 : grid.x_min + 2.0 * grid.length() / 3.0;
    if (!(a < b)) throw ConfigError("shock_pair preset: needs x1 < x2");
    return piecewise(grid, {a, b}, {u0, mid, right});
  }
  if (spec.id == "random_linfty") {
    if (spec.pieces < 1) throw ConfigError("random_linfty preset: pieces must be >= 1");
    if (!(spec.rho_min > 0.0) || !(spec.rho_max >= spec.rho_min))
      throw ConfigError("random_linfty preset: needs 0 < rho_min <= rho_max");
    std::mt19937 rng(spec.seed);
    std::uniform_real_distribution<double> rho_dist(spec.rho_min, spec.rho_max);
    std::uniform_real_distribution<double> vel_dist(-spec.u_max, spec.u_max);
    std::vector<ConservedState> states;
    for (int k = 0; k < spec.pieces; ++k) {
      const double rho = rho_dist(rng);
      states.push_back({rho, rho * vel_dist(rng)});
    }
    std::vector<double> breaks;
    for (int k = 1; k < spec.pieces; ++k)
      breaks.push_back(grid.x_min + grid.length() * k / spec.pieces);
    return piecewise(grid, breaks, states);
  }
  throw ConfigError("unknown preset '" + spec.id + "'");
}

}  // namespace eulerkin
