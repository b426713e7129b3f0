#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eulerkin/state.hpp"

using namespace eulerkin;

TEST_CASE("riemann invariants at reference states") {
  auto inv = riemann_invariants(2.0, 2.0);
  CHECK(inv.lambda1 == doctest::Approx(0.0));
  CHECK(inv.lambda2 == doctest::Approx(2.0));

  inv = riemann_invariants(2.0, 0.0);
  CHECK(inv.lambda1 == doctest::Approx(-1.0));
  CHECK(inv.lambda2 == doctest::Approx(1.0));

  inv = riemann_invariants(1.0, 0.0);
  CHECK(inv.lambda1 == doctest::Approx(-0.5));
  CHECK(inv.lambda2 == doctest::Approx(0.5));
}

TEST_CASE("invariants are undefined at vacuum") {
  CHECK_THROWS_AS(riemann_invariants(0.0, 0.0), VacuumError);
  CHECK_THROWS_AS(riemann_invariants(1e-13, 0.0), VacuumError);
}

TEST_CASE("from_invariants reference values and ordering error") {
  auto u = from_invariants(-1.0, 1.0);
  CHECK(u.rho == doctest::Approx(2.0));
  CHECK(u.m == doctest::Approx(0.0));

  u = from_invariants(0.0, 2.0);
  CHECK(u.rho == doctest::Approx(2.0));
  CHECK(u.m == doctest::Approx(2.0));

  u = from_invariants(0.7, 0.7);
  CHECK(u.rho == 0.0);
  CHECK(u.m == 0.0);

  CHECK_THROWS_AS(from_invariants(1.0, 0.0), OrderingError);
}

TEST_CASE("kinetic moments closed forms") {
  auto mom = kinetic_moments(0.0, 2.0);
  CHECK(mom.rho == doctest::Approx(2.0));
  CHECK(mom.m == doctest::Approx(2.0));
  CHECK(mom.e2 == doctest::Approx(8.0 / 3.0));
  CHECK(mom.e2 == doctest::Approx(2.0 * 2.0 / 2.0 + 8.0 / 12.0));

  mom = kinetic_moments(-1.0, 1.0);
  CHECK(mom.rho == doctest::Approx(2.0));
  CHECK(mom.m == doctest::Approx(0.0));
  CHECK(mom.e2 == doctest::Approx(2.0 / 3.0));

  mom = kinetic_moments(0.3, 0.3);
  CHECK(mom.rho == 0.0);
  CHECK(mom.m == 0.0);
  CHECK(mom.e2 == 0.0);
}

TEST_CASE("round trip and moment-flux identity on random states") {
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> rho_dist(1e-6, 10.0);
  std::uniform_real_distribution<double> vel_dist(-10.0, 10.0);
  for (int k = 0; k < 20000; ++k) {
    const double rho = rho_dist(rng);
    const double m = rho * vel_dist(rng);
    const auto inv = riemann_invariants(rho, m);
    CHECK(inv.lambda1 <= inv.lambda2);
    const auto back = from_invariants(inv.lambda1, inv.lambda2);
    CHECK(back.rho == doctest::Approx(rho).epsilon(1e-12));
    CHECK(back.m == doctest::Approx(m).epsilon(1e-12));

    const auto mom = kinetic_moments(inv.lambda1, inv.lambda2);
    const double flux = m * m / rho + rho * rho * rho / 12.0;
    CHECK(std::abs(mom.e2 - flux) <= 1e-12 * std::max(1.0, mom.e2));
  }
}

TEST_CASE("interval field round trip flags vacuum") {
  ConservedField f(4);
  f.rho << 1.0, 0.0, 2.0, 1e-13;
  f.m << 0.5, 0.0, -1.0, 0.0;
  const auto k = to_intervals(f);
  CHECK(k.lambda1[1] == 0.0);
  CHECK(k.lambda2[1] == 0.0);
  CHECK(k.lambda1[3] == 0.0);
  CHECK(k.L == doctest::Approx(1.05 * 1.5));  // cell 2: |m/rho| + rho/2 = 0.5 + 1
  const auto back = from_intervals(k);
  CHECK(back.rho[0] == doctest::Approx(1.0));
  CHECK(back.m[2] == doctest::Approx(-1.0));
  CHECK(back.rho[1] == 0.0);
}

TEST_CASE("state bounds of a field") {
  ConservedField f(3);
  f.rho << 1.0, 2.0, 0.5;
  f.m << 0.0, 2.0, -0.25;
  const auto b = StateBounds::of_field(f);
  CHECK(b.Gamma == doctest::Approx(2.0 + 1.0));
  CHECK(b.M == doctest::Approx(0.5));
  CHECK(b.L == doctest::Approx(1.05 * 2.0));
  CHECK(b.M <= b.Gamma);
  CHECK(b.L >= 1.4 * b.Gamma / 3.0);
}
