#ifndef EULERKIN_DISSIPATION_HPP
#define EULERKIN_DISSIPATION_HPP

#include <Eigen/Dense>
#include <vector>

#include "eulerkin/errors.hpp"

namespace eulerkin {

/// Binned nonnegative mass estimates of the entropy dissipation measure mu
/// over (t, x, v). v is represented by one-sided-kernel node centers v0.
struct DissipationField {
  std::vector<double> t_edges;  ///< size t_bins()+1
  std::vector<double> x_edges;  ///< size x_bins()+1
  Eigen::ArrayXd v0;            ///< node centers, size v_bins()
  double dv = 0.0;              ///< v bin width
  std::vector<double> mass;     ///< t-major, then x, then v

  int t_bins() const { return static_cast<int>(t_edges.size()) - 1; }
  int x_bins() const { return static_cast<int>(x_edges.size()) - 1; }
  int v_bins() const { return static_cast<int>(v0.size()); }

  double& at(int it, int ix, int iv) {
    return mass[(static_cast<std::size_t>(it) * x_bins() + ix) * v_bins() + iv];
  }
  double at(int it, int ix, int iv) const {
    return mass[(static_cast<std::size_t>(it) * x_bins() + ix) * v_bins() + iv];
  }

  double t_center(int it) const { return 0.5 * (t_edges[it] + t_edges[it + 1]); }
  double x_center(int ix) const { return 0.5 * (x_edges[ix] + x_edges[ix + 1]); }

  double total() const {
    double s = 0.0;
    for (double v : mass) s += v;
    return s;
  }
};

}  // namespace eulerkin

#endif
