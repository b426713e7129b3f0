#include "eulerkin/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace eulerkin {

namespace {

/// int_p^q v (v - v0) dv, p <= q.
double q_plus_piece(double p, double q, double v0) {
  const double i2 = (q - p) * (q * q + q * p + p * p) / 3.0;
  const double i1 = (q - p) * 0.5 * (q + p);
  return i2 - v0 * i1;
}

}  // namespace

EtaQ entropy_eval(const EntropyPair& pair, const ConservedState& u, double rho_floor) {
  if (u.rho <= rho_floor) return {0.0, 0.0};
  const auto inv = riemann_invariants(u, rho_floor);
  const double l1 = inv.lambda1, l2 = inv.lambda2;
  switch (pair.kind) {
    case EntropyPair::Kind::energy: {
      // eta = (l2^3 - l1^3)/6, q = (l2^4 - l1^4)/8, factored.
      const double w = l2 - l1;
      const double eta = w * (l1 * l1 + l1 * l2 + l2 * l2) / 6.0;
      const double q = w * (l1 + l2) * (l1 * l1 + l2 * l2) / 8.0;
      return {eta, q};
    }
    case EntropyPair::Kind::plus: {
      const double a = std::max(l2 - pair.v0, 0.0);
      const double b = std::max(l1 - pair.v0, 0.0);
      const double eta = 0.5 * (a * a - b * b);
      const double p = std::max(l1, pair.v0);
      const double q = p < l2 ? q_plus_piece(p, l2, pair.v0) : 0.0;
      return {eta, q};
    }
    case EntropyPair::Kind::minus: {
      const double a = std::max(pair.v0 - l1, 0.0);
      const double b = std::max(pair.v0 - l2, 0.0);
      const double eta = 0.5 * (a * a - b * b);
      const double qq = std::min(l2, pair.v0);
      const double q = l1 < qq ? -q_plus_piece(l1, qq, pair.v0) : 0.0;
      return {eta, q};
    }
  }
  return {0.0, 0.0};
}

DissipationField mu_estimate(const SpaceTimeRecord& record, int v_bins) {
  if (record.scheme != Scheme::kinetic || !record.collapse_log)
    throw UnsupportedSchemeError(
        "mu_estimate: record has no collapse logs (godunov scheme or logging disabled)");
  const DissipationField& log = *record.collapse_log;
  if (v_bins < 1 || log.v_bins() % v_bins != 0) {
    std::ostringstream os;
    os << "mu_estimate: v_bins = " << v_bins << " must divide the logged node count "
       << log.v_bins();
    throw ConfigError(os.str());
  }
  const int group = log.v_bins() / v_bins;
  if (group == 1) return log;

  DissipationField out;
  out.t_edges = log.t_edges;
  out.x_edges = log.x_edges;
  out.dv = log.dv * group;
  out.v0.resize(v_bins);
  for (int i = 0; i < v_bins; ++i) {
    double c = 0.0;
    for (int g = 0; g < group; ++g) c += log.v0[i * group + g];
    out.v0[i] = c / group;
  }
  out.mass.assign(static_cast<std::size_t>(out.t_bins()) * out.x_bins() * v_bins, 0.0);
  for (int it = 0; it < log.t_bins(); ++it)
    for (int ix = 0; ix < log.x_bins(); ++ix)
      for (int iv = 0; iv < v_bins; ++iv) {
        double s = 0.0;
        for (int g = 0; g < group; ++g) s += log.at(it, ix, iv * group + g);
        out.at(it, ix, iv) = s;
      }
  return out;
}

TvBoundReport tv_bound_check(const DissipationField& field, const SpaceTimeRecord& record,
                             double t_center, double x_center, double r, double R, double a,
                             VelocityTail tail) {
  if (!(0.0 < r && r < R)) throw ConfigError("tv_bound_check: requires 0 < r < R");
  const auto& g = record.grid;
  if (t_center - R < record.t_begin() - 1e-12 || t_center + R > record.t_end() + 1e-12 ||
      x_center - R < g.x_min - 1e-12 || x_center + R > g.x_max + 1e-12) {
    std::ostringstream os;
    os << "tv_bound_check: ball B_R(" << t_center << ", " << x_center << "; " << R
       << ") leaves the record domain";
    throw GeometryError(os.str());
  }

  TvBoundReport rep;
  rep.t_center = t_center;
  rep.x_center = x_center;
  rep.r = r;
  rep.R = R;
  rep.a = a;
  rep.tail = tail;

  // Numerator: bin masses with center inside B_r and v0 in the tail.
  for (int it = 0; it < field.t_bins(); ++it) {
    const double dt = field.t_center(it) - t_center;
    if (std::abs(dt) > r) continue;
    for (int ix = 0; ix < field.x_bins(); ++ix) {
      const double dx = field.x_center(ix) - x_center;
      if (dt * dt + dx * dx > r * r) continue;
      for (int iv = 0; iv < field.v_bins(); ++iv) {
        const bool in_tail = tail == VelocityTail::below ? field.v0[iv] <= a : field.v0[iv] >= a;
        if (in_tail) rep.numerator += field.at(it, ix, iv);
      }
    }
  }

  // Denominator: int int f over B_R and the velocity tail, from snapshots.
  const double wt = record.snapshot_spacing();
  const double dx = g.dx();
  for (std::size_t k = 0; k < record.times.size(); ++k) {
    const double dt = record.times[k] - t_center;
    if (std::abs(dt) > R) continue;
    const auto& f = record.snapshots[k];
    for (int i = 0; i < g.n_cells; ++i) {
      const double dxc = g.center(i) - x_center;
      if (dt * dt + dxc * dxc > R * R) continue;
      if (f.rho[i] <= record.rho_floor) continue;
      const auto inv = riemann_invariants(f.rho[i], f.m[i], record.rho_floor);
      const double val = tail == VelocityTail::below
                             ? std::max(std::min(inv.lambda2, a) - inv.lambda1, 0.0)
                             : std::max(inv.lambda2 - std::max(inv.lambda1, a), 0.0);
      rep.denominator += val * dx * wt;
    }
  }

  if (rep.denominator > 0.0) {
    rep.ratio = rep.numerator * (R - r) / rep.denominator;
  } else if (rep.numerator <= 1e-14) {
    rep.ratio = 0.0;
    rep.trivial_zero = true;
  } else {
    rep.ratio = std::numeric_limits<double>::infinity();
  }
  return rep;
}

}  // namespace eulerkin
