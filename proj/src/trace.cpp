#include "eulerkin/trace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eulerkin/riemann.hpp"

namespace eulerkin {

MollifierKernel MollifierKernel::bump(double eps, int n_nodes) {
  if (!(eps > 0.0)) throw ConfigError("MollifierKernel: eps must be positive");
  if (n_nodes < 2) throw ConfigError("MollifierKernel: need at least 2 nodes");
  MollifierKernel k;
  k.eps = eps;
  k.nodes.resize(n_nodes);
  k.weights.resize(n_nodes);
  // Midpoint samples of the standard bump, normalized so the weights sum to
  // one exactly; psi <= 0 never occurs on (0,1).
  for (int i = 0; i < n_nodes; ++i) {
    const double s = (i + 0.5) / n_nodes;
    k.nodes[i] = s;
    k.weights[i] = std::exp(-1.0 / (s * (1.0 - s)));
  }
  k.weights /= k.weights.sum();
  return k;
}

LipschitzCurve LipschitzCurve::line(const SpaceTimeRecord& rec, double x0, double speed) {
  LipschitzCurve c;
  c.t = rec.times;
  c.h.resize(c.t.size());
  for (std::size_t j = 0; j < c.t.size(); ++j) c.h[j] = x0 + speed * (c.t[j] - rec.t_begin());
  c.lip = std::abs(speed);
  return c;
}

LipschitzCurve LipschitzCurve::from_samples(std::vector<double> t, std::vector<double> h) {
  if (t.size() != h.size() || t.size() < 2)
    throw ConfigError("LipschitzCurve: need matching sample vectors of size >= 2");
  LipschitzCurve c;
  c.t = std::move(t);
  c.h = std::move(h);
  double lip = 0.0;
  for (std::size_t j = 0; j + 1 < c.t.size(); ++j) {
    const double dt = c.t[j + 1] - c.t[j];
    if (!(dt > 0.0)) throw ConfigError("LipschitzCurve: times must increase");
    lip = std::max(lip, std::abs(c.h[j + 1] - c.h[j]) / dt);
  }
  c.lip = lip;
  return c;
}

double LipschitzCurve::at(double time) const {
  if (time <= t.front()) return h.front();
  if (time >= t.back()) return h.back();
  const auto it = std::upper_bound(t.begin(), t.end(), time);
  const std::size_t j = static_cast<std::size_t>(it - t.begin()) - 1;
  const double w = (time - t[j]) / (t[j + 1] - t[j]);
  return (1.0 - w) * h[j] + w * h[j + 1];
}

double LipschitzCurve::derivative(double time) const {
  const std::size_t n = t.size();
  if (n < 2) return 0.0;
  // Centered difference over one sample spacing (one-sided at the ends).
  const auto it = std::upper_bound(t.begin(), t.end(), time);
  std::size_t j = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
  j = std::min(j, n - 2);
  const std::size_t lo = j > 0 ? j - 1 : j;
  const std::size_t hi = std::min(j + 1, n - 1);
  return (h[hi] - h[lo]) / (t[hi] - t[lo]);
}

namespace {

struct TimeWeights {
  std::vector<double> w;
  double total = 0.0;
};

TimeWeights trapezoid_weights(const std::vector<double>& times) {
  TimeWeights tw;
  const std::size_t n = times.size();
  tw.w.assign(n, 0.0);
  if (n == 1) {
    tw.w[0] = 1.0;
    tw.total = 1.0;
    return tw;
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double dt = times[j + 1] - times[j];
    tw.w[j] += 0.5 * dt;
    tw.w[j + 1] += 0.5 * dt;
  }
  for (double v : tw.w) tw.total += v;
  return tw;
}

double offset_limit(const SpaceTimeRecord& rec, const LipschitzCurve& curve) {
  // Largest |y| so that h(t) +/- y stays inside the grid for all samples.
  const auto& g = rec.grid;
  if (g.boundary == Boundary::periodic) return 0.25 * g.length();
  double lim = 0.25 * g.length();
  for (double time : rec.times) {
    const double x = curve.at(time);
    lim = std::min({lim, x - g.x_min, g.x_max - x});
  }
  return lim;
}

}  // namespace

TraceReport extract_trace(const SpaceTimeRecord& rec, const LipschitzCurve& curve,
                          TraceSide side, TraceOptions opts) {
  const auto& g = rec.grid;
  const double dx = g.dx();
  const double band = opts.band > 0.0 ? opts.band : 2.0 * dx;
  double span = opts.ladder_span > 0.0 ? opts.ladder_span : offset_limit(rec, curve);
  if (span < band) {
    std::ostringstream os;
    os << "extract_trace: offset ladder span " << span << " below the trace band " << band
       << " (curve too close to the boundary)";
    throw GeometryError(os.str());
  }
  if (g.boundary == Boundary::outflow) {
    const double lim = offset_limit(rec, curve);
    if (span > lim + 1e-12) {
      std::ostringstream os;
      os << "extract_trace: ladder span " << span << " exits the domain (limit " << lim << ")";
      throw GeometryError(os.str());
    }
  }

  TraceReport rep;
  rep.times = rec.times;
  rep.band = band;
  rep.side = side;
  const std::size_t nt = rec.times.size();
  const int n_off = std::max(1, static_cast<int>(std::floor(span / dx)));
  const int n_band = std::max(1, std::min(n_off, static_cast<int>(std::floor(band / dx + 1e-9))));

  // Cell values at every offset, by snapshot. values[side][j][offset-1].
  auto value = [&](std::size_t j, double y) -> ConservedState {
    const double x = curve.at(rec.times[j]) + y;
    const int i = g.cell_of(x);
    return {rec.snapshots[j].rho[i], rec.snapshots[j].m[i]};
  };

  const bool want_plus = side != TraceSide::left;
  const bool want_minus = side != TraceSide::right;
  rep.u_plus.assign(nt, ConservedState{});
  rep.u_minus.assign(nt, ConservedState{});
  for (std::size_t j = 0; j < nt; ++j) {
    if (want_plus) {
      double r = 0.0, mm = 0.0;
      for (int o = 1; o <= n_band; ++o) {
        const auto u = value(j, o * dx);
        r += u.rho;
        mm += u.m;
      }
      rep.u_plus[j] = {r / n_band, mm / n_band};
    }
    if (want_minus) {
      double r = 0.0, mm = 0.0;
      for (int o = 1; o <= n_band; ++o) {
        const auto u = value(j, -o * dx);
        r += u.rho;
        mm += u.m;
      }
      rep.u_minus[j] = {r / n_band, mm / n_band};
    }
  }

  // Time-integrated error per offset.
  const auto tw = trapezoid_weights(rec.times);
  std::vector<double> err(n_off, 0.0);
  std::vector<std::vector<double>> pointwise(nt);  // per time: error at each offset
  for (std::size_t j = 0; j < nt; ++j) pointwise[j].assign(n_off, 0.0);
  for (std::size_t j = 0; j < nt; ++j) {
    for (int o = 1; o <= n_off; ++o) {
      double e = 0.0;
      if (want_plus) {
        const auto u = value(j, o * dx);
        e += std::abs(u.rho - rep.u_plus[j].rho) + std::abs(u.m - rep.u_plus[j].m);
      }
      if (want_minus) {
        const auto u = value(j, -o * dx);
        e += std::abs(u.rho - rep.u_minus[j].rho) + std::abs(u.m - rep.u_minus[j].m);
      }
      err[o - 1] += tw.w[j] * e;
      pointwise[j][o - 1] = e;
    }
  }

  // Dyadic ladder: k_i = (1/span) 2^i while 1/k stays at or above dx.
  double k = 1.0 / span;
  while (1.0 / k >= dx * (1.0 - 1e-12)) {
    const double ymax = 1.0 / k;
    const int omax = std::min(n_off, static_cast<int>(std::floor(ymax / dx + 1e-9)));
    if (omax < 1) break;
    double esup = 0.0;
    for (int o = 1; o <= omax; ++o) esup = std::max(esup, err[o - 1]);
    double uni = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
      double m = 0.0;
      for (int o = 1; o <= omax; ++o) m = std::max(m, pointwise[j][o - 1]);
      uni += tw.w[j] * m;
    }
    rep.k.push_back(k);
    rep.E.push_back(esup);
    rep.uniform_E.push_back(uni);
    k *= 2.0;
  }

  const double span_t = rec.t_end() - rec.t_begin();
  rep.verify_tol = opts.verify_tol > 0.0 ? opts.verify_tol : 0.02 * std::max(span_t, 1e-12);
  if (!rep.E.empty()) {
    const bool tail_ok = rep.E.back() <= rep.E.front() + 1e-12;
    rep.verified = rep.E.back() <= rep.verify_tol && tail_ok;
  }
  return rep;
}

ConservedState TraceReport::mean_plus() const {
  const auto tw = trapezoid_weights(times);
  double r = 0.0, mm = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    r += tw.w[j] * u_plus[j].rho;
    mm += tw.w[j] * u_plus[j].m;
  }
  return {r / tw.total, mm / tw.total};
}

ConservedState TraceReport::mean_minus() const {
  const auto tw = trapezoid_weights(times);
  double r = 0.0, mm = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    r += tw.w[j] * u_minus[j].rho;
    mm += tw.w[j] * u_minus[j].m;
  }
  return {r / tw.total, mm / tw.total};
}

DichotomyReport rh_dichotomy(const SpaceTimeRecord& rec, const LipschitzCurve& curve,
                             const TraceReport& trace, DichotomyOptions opts) {
  if (trace.side != TraceSide::both)
    throw ConfigError("rh_dichotomy: needs a two-sided trace report");
  DichotomyReport rep;
  const std::size_t nt = trace.times.size();
  const auto tw = trapezoid_weights(trace.times);
  int shocks = 0;
  double mean_rh = 0.0, mean_ent = 0.0, mean_hdot = 0.0;
  double jr = 0.0, jm = 0.0;
  for (std::size_t j = 0; j < nt; ++j) {
    DichotomyPoint p;
    p.t = trace.times[j];
    p.hdot = curve.derivative(p.t);
    const auto& up = trace.u_plus[j];
    const auto& um = trace.u_minus[j];
    p.jump_norm = std::abs(up.rho - um.rho) + std::abs(up.m - um.m);
    const auto res = rh_residual(um, up, p.hdot);
    p.rh_residual = std::abs(res.mass) + std::abs(res.momentum);
    // Energy pair: production = hdot [eta] - [q] must be >= 0 for entropic jumps.
    auto eta = [](const ConservedState& u) {
      return u.rho > 0.0 ? 0.5 * u.m * u.m / u.rho + std::pow(u.rho, 3) / 24.0 : 0.0;
    };
    auto qf = [](const ConservedState& u) {
      if (u.rho <= 0.0) return 0.0;
      const auto inv = riemann_invariants(u);
      const double w = inv.lambda2 - inv.lambda1;
      return w * (inv.lambda1 + inv.lambda2) *
             (inv.lambda1 * inv.lambda1 + inv.lambda2 * inv.lambda2) / 8.0;
    };
    p.entropy_residual =
        std::max(0.0, (qf(up) - qf(um)) - p.hdot * (eta(up) - eta(um)));
    p.label = p.jump_norm <= opts.cont_tol ? PointLabel::continuous : PointLabel::shock;
    if (p.label == PointLabel::shock) {
      ++shocks;
      mean_rh += p.rh_residual;
      mean_ent += p.entropy_residual;
    }
    mean_hdot += tw.w[j] * p.hdot;
    jr += tw.w[j] * (up.rho - um.rho);
    jm += tw.w[j] * (up.m - um.m);
    rep.points.push_back(p);
  }
  rep.shock_fraction = nt > 0 ? static_cast<double>(shocks) / nt : 0.0;
  rep.continuous_fraction = 1.0 - rep.shock_fraction;
  rep.mean_rh_residual = shocks > 0 ? mean_rh / shocks : 0.0;
  rep.mean_entropy_residual = shocks > 0 ? mean_ent / shocks : 0.0;
  mean_hdot /= tw.total;
  rep.trace_jump_rho = jr / tw.total;
  rep.trace_jump_m = jm / tw.total;
  rep.overall = rep.continuous_fraction >= 0.99 ? PointLabel::continuous : PointLabel::shock;

  // Psi_eps pairing: antisymmetric mollifier average of one-sided samples.
  std::vector<double> eps_list = opts.eps_list;
  if (eps_list.empty()) {
    // Widths below ~10 cells sit inside the numerical shock profile and
    // pollute the pairing; start the ladder above it.
    const double dx = rec.grid.dx();
    eps_list = {16.0 * dx, 32.0 * dx, 64.0 * dx};
  }
  std::sort(eps_list.begin(), eps_list.end());
  for (double eps : eps_list) {
    const auto kern = MollifierKernel::bump(eps, opts.kernel_nodes);
    double pr = 0.0, pm = 0.0, pfr = 0.0, pfm = 0.0;
    for (std::size_t j = 0; j < nt; ++j) {
      const double hx = curve.at(trace.times[j]);
      for (int b = 0; b < kern.nodes.size(); ++b) {
        const double y = eps * kern.nodes[b];
        const auto upv = rec.at(trace.times[j], hx + y);
        const auto umv = rec.at(trace.times[j], hx - y);
        const double w = tw.w[j] * kern.weights[b];
        pr += w * (upv.rho - umv.rho);
        pm += w * (upv.m - umv.m);
        pfr += w * (upv.m - umv.m);
        pfm += w * (momentum_flux(upv) - momentum_flux(umv));
      }
    }
    EpsPairing pair;
    pair.eps = eps;
    pair.jump_rho = pr / tw.total;
    pair.jump_m = pm / tw.total;
    pair.rh_residual = std::abs(mean_hdot * pair.jump_rho - pfr / tw.total) +
                       std::abs(mean_hdot * pair.jump_m - pfm / tw.total);
    rep.pairings.push_back(pair);
  }
  if (!rep.pairings.empty()) {
    const auto& p0 = rep.pairings.front();
    const double tj = std::abs(rep.trace_jump_rho) + std::abs(rep.trace_jump_m);
    const double pj = std::abs(p0.jump_rho - rep.trace_jump_rho) +
                      std::abs(p0.jump_m - rep.trace_jump_m);
    rep.pairing_vs_trace = tj > 1e-12 ? pj / tj : pj;
  }
  return rep;
}

BlowupPatch blowup_rescale(const SpaceTimeRecord& rec, const LipschitzCurve& curve, double t0,
                           double eta, double tau_half, int n_tau, int n_y) {
  if (!(eta > 0.0)) throw ConfigError("blowup_rescale: eta must be positive");
  if (t0 - eta * tau_half < rec.t_begin() - 1e-12 || t0 + eta * tau_half > rec.t_end() + 1e-12) {
    std::ostringstream os;
    os << "blowup_rescale: window t0 +/- eta*tau_half = [" << t0 - eta * tau_half << ", "
       << t0 + eta * tau_half << "] exits the record";
    throw GeometryError(os.str());
  }
  BlowupPatch p;
  p.t0 = t0;
  p.eta = eta;
  p.tau.setLinSpaced(n_tau, -tau_half, tau_half);
  p.y.setLinSpaced(n_y, -1.0, 1.0);
  p.rho.resize(n_tau, n_y);
  p.m.resize(n_tau, n_y);
  for (int a = 0; a < n_tau; ++a) {
    const double time = t0 + eta * p.tau[a];
    const double hx = curve.at(time);
    for (int b = 0; b < n_y; ++b) {
      const auto u = rec.at(time, hx + eta * p.y[b]);
      p.rho(a, b) = u.rho;
      p.m(a, b) = u.m;
    }
  }
  return p;
}

HalfSpaceDistance half_space_distance(const BlowupPatch& patch, const ConservedState& u_minus,
                                      const ConservedState& u_plus, double margin) {
  HalfSpaceDistance d;
  int np = 0, nm = 0;
  for (int a = 0; a < patch.tau.size(); ++a)
    for (int b = 0; b < patch.y.size(); ++b) {
      const double y = patch.y[b];
      if (y >= margin) {
        d.plus += std::abs(patch.rho(a, b) - u_plus.rho) + std::abs(patch.m(a, b) - u_plus.m);
        ++np;
      } else if (y <= -margin) {
        d.minus += std::abs(patch.rho(a, b) - u_minus.rho) + std::abs(patch.m(a, b) - u_minus.m);
        ++nm;
      }
    }
  if (np > 0) d.plus /= np;
  if (nm > 0) d.minus /= nm;
  return d;
}

}  // namespace eulerkin
