#ifndef EULERKIN_GRID_HPP
#define EULERKIN_GRID_HPP

#include <cmath>
#include <string>

#include "eulerkin/errors.hpp"

namespace eulerkin {

enum class Boundary { periodic, outflow };

inline std::string to_string(Boundary b) {
  return b == Boundary::periodic ? "periodic" : "outflow";
}

/// Uniform 1-D cell grid on [x_min, x_max].
struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_cells = 2;
  Boundary boundary = Boundary::periodic;

  Grid1D() = default;
  Grid1D(double xmin, double xmax, int n, Boundary b = Boundary::periodic)
      : x_min(xmin), x_max(xmax), n_cells(n), boundary(b) {
    if (n_cells < 2) throw ConfigError("Grid1D: n_cells must be >= 2");
    if (!(x_max > x_min)) throw ConfigError("Grid1D: requires x_max > x_min");
  }

  double dx() const { return (x_max - x_min) / n_cells; }
  double length() const { return x_max - x_min; }
  double center(int i) const { return x_min + (i + 0.5) * dx(); }
  double left_edge(int i) const { return x_min + i * dx(); }

  /// Neighbor index honoring the boundary rule (outflow clamps).
  int neighbor(int i, int offset) const {
    int j = i + offset;
    if (boundary == Boundary::periodic) {
      j %= n_cells;
      if (j < 0) j += n_cells;
      return j;
    }
    if (j < 0) return 0;
    if (j >= n_cells) return n_cells - 1;
    return j;
  }

  /// Cell index containing x; periodic wrap or outflow clamp.
  int cell_of(double x) const {
    double s = (x - x_min) / dx();
    if (boundary == Boundary::periodic) {
      s = std::fmod(s, static_cast<double>(n_cells));
      if (s < 0) s += n_cells;
      int i = static_cast<int>(s);
      return i >= n_cells ? n_cells - 1 : i;
    }
    if (s <= 0.0) return 0;
    if (s >= n_cells) return n_cells - 1;
    return static_cast<int>(s);
  }

  bool contains(double x) const { return x >= x_min && x <= x_max; }
};

}  // namespace eulerkin

#endif
