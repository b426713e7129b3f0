#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "eulerkin/riemann.hpp"

using namespace eulerkin;

namespace {

// Independent oracle for the 1-shock from (1, 0) to rho* = 2: eliminating s
// from the jump conditions leaves m*^2 = m*^2/2 + 7/12, solved by bisection
// on r(m) = m^2/2 - 7/12 over the negative branch.
double oracle_mstar_quadratic() {
  auto resid = [](double m) { return 0.5 * m * m - 7.0 / 12.0; };
  double lo = -2.0, hi = 0.0;  // resid(lo) > 0, resid(hi) < 0
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (resid(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double entropy_eta(const ConservedState& u) {
  if (u.rho <= 0.0) return 0.0;
  return 0.5 * u.m * u.m / u.rho + std::pow(u.rho, 3) / 24.0;
}

double entropy_q(const ConservedState& u) {
  if (u.rho <= 0.0) return 0.0;
  const auto inv = riemann_invariants(u);
  return (std::pow(inv.lambda2, 4) - std::pow(inv.lambda1, 4)) / 8.0;
}

}  // namespace

TEST_CASE("hugoniot degenerate limit is the characteristic speed") {
  const auto h = hugoniot_state({1.0, 0.0}, 1.0, 1);
  CHECK(h.m == doctest::Approx(0.0));
  CHECK(h.speed == doctest::Approx(-0.5));
}

TEST_CASE("hugoniot 1-shock from (1,0) to rho*=2 matches the quadratic oracle") {
  const double m_oracle = oracle_mstar_quadratic();
  CHECK(m_oracle == doctest::Approx(-std::sqrt(7.0 / 6.0)).epsilon(1e-12));
  CHECK(m_oracle == doctest::Approx(-1.0801234497346435).epsilon(1e-12));

  const auto h = hugoniot_state({1.0, 0.0}, 2.0, 1);
  CHECK(h.m == doctest::Approx(m_oracle).epsilon(1e-12));
  CHECK(h.speed == doctest::Approx(m_oracle).epsilon(1e-12));  // s(2-1) = m*

  const auto res = rh_residual({1.0, 0.0}, {2.0, h.m}, h.speed);
  CHECK(std::abs(res.mass) <= 1e-12);
  CHECK(std::abs(res.momentum) <= 1e-12);
}

TEST_CASE("mirror symmetry m -> -m swaps families") {
  const auto h1 = hugoniot_state({1.0, 0.3}, 1.7, 1);
  const auto h2 = hugoniot_state({1.0, -0.3}, 1.7, 2);
  CHECK(h1.m == doctest::Approx(-h2.m).epsilon(1e-13));
  CHECK(h1.speed == doctest::Approx(-h2.speed).epsilon(1e-13));
}

TEST_CASE("hugoniot rejects the rarefaction side") {
  CHECK_THROWS_AS(hugoniot_state({1.0, 0.0}, 0.5, 1), AdmissibilityError);
  CHECK_THROWS_AS(hugoniot_state({2.0, 1.0}, 1.0, 2), AdmissibilityError);
}

TEST_CASE("equal states give a waveless solution") {
  const auto sol = solve_riemann({1.3, 0.4}, {1.3, 0.4});
  CHECK(!sol.vacuum);
  for (const auto& w : sol.waves) CHECK(w.kind == WaveKind::none);
  const auto u = sample_riemann(sol, 0.123);
  CHECK(u.rho == doctest::Approx(1.3));
  CHECK(u.m == doctest::Approx(0.4));
}

TEST_CASE("vacuum criterion u_R - u_L >= (rho_L + rho_R)/2") {
  const auto sol = solve_riemann({1.0, -1.0}, {1.0, 1.0});
  CHECK(sol.vacuum);
  CHECK(sol.vacuum_lo == doctest::Approx(-0.5));  // lambda2(uL)
  CHECK(sol.vacuum_hi == doctest::Approx(0.5));   // lambda1(uR)
  const auto mid = sample_riemann(sol, 0.0);
  CHECK(mid.rho == 0.0);
  CHECK(mid.m == 0.0);
  // Just inside the fans the density is small but positive.
  const auto near = sample_riemann(sol, -0.51);
  CHECK(near.rho > 0.0);
  CHECK(near.rho < 0.05);

  const auto no_vac = solve_riemann({1.0, -0.49}, {1.0, 0.49});
  CHECK(!no_vac.vacuum);
  CHECK(no_vac.star->rho > 0.0);
}

TEST_CASE("single 1-shock data reproduces the hugoniot point") {
  const double m_star = -std::sqrt(7.0 / 6.0);
  const auto sol = solve_riemann({1.0, 0.0}, {2.0, m_star});
  REQUIRE(sol.star.has_value());
  CHECK(sol.star->rho == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sol.star->m == doctest::Approx(m_star).epsilon(1e-9));
  REQUIRE(sol.waves.size() == 2);
  CHECK(sol.waves[0].kind == WaveKind::shock);
  CHECK(sol.waves[0].speed_lo == doctest::Approx(m_star).epsilon(1e-9));
  CHECK(sol.waves[1].kind == WaveKind::none);

  // Sampling across the shock.
  const double s = sol.waves[0].speed_lo;
  const auto ul = sample_riemann(sol, s - 1e-9);
  const auto ur = sample_riemann(sol, s + 1e-9);
  CHECK(ul.rho == doctest::Approx(1.0));
  CHECK(ur.rho == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sample_riemann(sol, -10.0).rho == doctest::Approx(1.0));
  CHECK(sample_riemann(sol, 10.0).rho == doctest::Approx(2.0));
}

TEST_CASE("pure rarefaction keeps the opposite invariant constant") {
  // 1-rarefaction: lambda2 constant, so uR = (1, 0.5) from uL = (2, 0).
  const auto sol = solve_riemann({2.0, 0.0}, {1.0, 0.5});
  REQUIRE(sol.waves.size() == 2);
  CHECK(sol.waves[0].kind == WaveKind::rarefaction);
  CHECK(sol.waves[1].kind == WaveKind::none);
  CHECK(sol.waves[0].speed_lo == doctest::Approx(-1.0));
  CHECK(sol.waves[0].speed_hi == doctest::Approx(0.0).epsilon(1e-9));
  // Inside the fan lambda2 stays 1 and lambda1 = xi.
  for (double xi : {-0.9, -0.5, -0.2}) {
    const auto u = sample_riemann(sol, xi);
    const auto inv = riemann_invariants(u);
    CHECK(inv.lambda2 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(inv.lambda1 == doctest::Approx(xi).epsilon(1e-9));
  }
}

TEST_CASE("random problems: RH, Lax, entropy and invariant-constancy checks") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> rho_dist(0.2, 3.0);
  std::uniform_real_distribution<double> vel_dist(-1.0, 1.0);
  int shocks = 0, fans = 0;
  for (int k = 0; k < 300; ++k) {
    const double rl = rho_dist(rng), rr = rho_dist(rng);
    const ConservedState uL{rl, rl * vel_dist(rng)};
    const ConservedState uR{rr, rr * vel_dist(rng)};
    const auto sol = solve_riemann(uL, uR);
    if (sol.vacuum) continue;
    double prev_hi = -1e300;
    for (const auto& w : sol.waves) {
      CHECK(w.speed_lo >= prev_hi - 1e-9);  // waves sorted by speed
      prev_hi = w.speed_hi;
      if (w.kind == WaveKind::shock) {
        ++shocks;
        const ConservedState pre = w.family == 1 ? w.upstream : w.downstream;
        const ConservedState post = w.family == 1 ? w.downstream : w.upstream;
        const auto res = rh_residual(pre, post, w.speed_lo);
        CHECK(std::abs(res.mass) <= 1e-10);
        CHECK(std::abs(res.momentum) <= 1e-10);
        // Lax admissibility: the shock's own characteristics impinge on it.
        // With upstream = the state the shock propagates into, family 1 reads
        // l1(down) <= s <= l1(up) and family 2 reads l2(up) <= s <= l2(down).
        const auto iu = riemann_invariants(w.upstream);
        const auto id = riemann_invariants(w.downstream);
        if (w.family == 1) {
          CHECK(id.lambda1 <= w.speed_lo + 1e-12);
          CHECK(w.speed_lo <= iu.lambda1 + 1e-12);
        } else {
          CHECK(iu.lambda2 <= w.speed_lo + 1e-12);
          CHECK(w.speed_lo <= id.lambda2 + 1e-12);
        }
        // Entropy inequality for the energy pair: [q] <= s [eta].
        const double lhs = entropy_q(post) - entropy_q(pre);
        const double rhs = w.speed_lo * (entropy_eta(post) - entropy_eta(pre));
        CHECK(lhs <= rhs + 1e-10);
      } else if (w.kind == WaveKind::rarefaction) {
        ++fans;
        // The opposite invariant is constant across the fan.
        const auto iu = riemann_invariants(w.upstream);
        const auto id = riemann_invariants(w.downstream);
        if (w.family == 1)
          CHECK(iu.lambda2 == doctest::Approx(id.lambda2).epsilon(1e-10));
        else
          CHECK(iu.lambda1 == doctest::Approx(id.lambda1).epsilon(1e-10));
      }
    }
    // Far-field sampling returns the data.
    const double span = max_signal_speed(sol) + 1.0;
    CHECK(sample_riemann(sol, -span).rho == doctest::Approx(uL.rho));
    CHECK(sample_riemann(sol, span).rho == doctest::Approx(uR.rho));
  }
  CHECK(shocks > 50);
  CHECK(fans > 50);
}
