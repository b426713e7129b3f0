#ifndef EULERKIN_ENTROPY_HPP
#define EULERKIN_ENTROPY_HPP

#include "eulerkin/dissipation.hpp"
#include "eulerkin/solver.hpp"
#include "eulerkin/state.hpp"

namespace eulerkin {

/// Kinetic entropy pair: eta(u) = int g(v) chi_[l1,l2](v) dv and
/// q(u) = int v g(v) chi dv, for a convex velocity kernel g.
struct EntropyPair {
  enum class Kind { energy, plus, minus };
  Kind kind = Kind::energy;
  double v0 = 0.0;  ///< kernel parameter for the one-sided kinds

  static EntropyPair energy() { return {Kind::energy, 0.0}; }
  static EntropyPair plus(double v0) { return {Kind::plus, v0}; }    ///< g = (v - v0)_+
  static EntropyPair minus(double v0) { return {Kind::minus, v0}; }  ///< g = (v0 - v)_+
};

struct EtaQ {
  double eta = 0.0;
  double q = 0.0;
};

/// Closed-form (eta, q); vacuum states give (0, 0).
EtaQ entropy_eval(const EntropyPair& pair, const ConservedState& u,
                  double rho_floor = kDefaultRhoFloor);

/// Rebin the record's collapse log onto v_bins one-sided-kernel nodes.
/// v_bins must divide the logged node count. Records without collapse logs
/// (the godunov scheme, or logging disabled) raise UnsupportedSchemeError.
DissipationField mu_estimate(const SpaceTimeRecord& record, int v_bins);

enum class VelocityTail { below, above };  ///< (-inf, a] or [a, inf)

struct TvBoundReport {
  double t_center = 0.0, x_center = 0.0;
  double r = 0.0, R = 0.0, a = 0.0;
  VelocityTail tail = VelocityTail::below;
  double numerator = 0.0;    ///< mu(B_r x tail)
  double denominator = 0.0;  ///< int_{B_R} int_tail f dv dx dt
  double ratio = 0.0;        ///< numerator * (R - r) / denominator (0 for 0/0)
  bool trivial_zero = false;
};

/// Bounded-ratio check of the localized TV estimate
/// mu(B_r x (-inf,a]) <= C(L) (R-r)^{-1} int_{B_R} int_{-L}^{a} f.
TvBoundReport tv_bound_check(const DissipationField& field, const SpaceTimeRecord& record,
                             double t_center, double x_center, double r, double R, double a,
                             VelocityTail tail = VelocityTail::below);

}  // namespace eulerkin

#endif
