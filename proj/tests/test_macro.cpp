#include <cmath>

#include <doctest.h>

#include "traffic/errors.hpp"
#include "traffic/macro.hpp"

using namespace traffic;
namespace tm_ = traffic::macro;

namespace {
const ModelParams kDefault;
}

TEST_CASE("equilibrium speed frozen values") {
  // Frozen against a 30-digit evaluation of the tanh curve.
  CHECK(tm_::equilibrium_speed(0.02, kDefault) ==
        doctest::Approx(29.9875620721414).epsilon(1e-13));
  CHECK(tm_::equilibrium_speed(0.05, kDefault) ==
        doctest::Approx(16.4827329044248).epsilon(1e-13));
  CHECK(tm_::equilibrium_speed(0.1, kDefault) ==
        doctest::Approx(0.644151113134333).epsilon(1e-13));
  CHECK(tm_::equilibrium_speed(0.198, kDefault) ==
        doctest::Approx(0.0801077299450669).epsilon(1e-13));
  CHECK(tm_::equilibrium_speed(0.2, kDefault) ==
        doctest::Approx(0.0782654747916712).epsilon(1e-13));
  CHECK_THROWS_AS(tm_::equilibrium_speed(0.0, kDefault), DomainError);
}

TEST_CASE("equilibrium speed is monotone non-increasing") {
  double prev = tm_::equilibrium_speed(1e-6, kDefault);
  for (int i = 1; i <= 2000; ++i) {
    const double rho = 1e-6 + (0.25 - 1e-6) * i / 2000.0;
    const double v = tm_::equilibrium_speed(rho, kDefault);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
}

TEST_CASE("sound speed and anticipation coefficient") {
  CHECK(tm_::sound_speed(30.0, 125.0) ==
        doctest::Approx(2.68328157299974764).epsilon(1e-15));
  // Frozen: b(0.1, 20) = -(124/125) * 2 = -1.984.
  CHECK(tm_::anticipation_coefficient(0.1, 20.0, 125.0) ==
        doctest::Approx(-1.984).epsilon(1e-15));
  CHECK(tm_::anticipation_coefficient(0.1, 20.0, 125.0) <= 0.0);
}

TEST_CASE("flux and Jacobian frozen values") {
  const tm_::ConservedState u{0.1, 2.0};  // v = 20
  const auto f = tm_::flux(u, 125.0);
  CHECK(f.f1 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(f.f2 == doctest::Approx(40.32).epsilon(1e-14));

  const auto a = tm_::jacobian(u, 125.0);
  CHECK(a[0][0] == 0.0);
  CHECK(a[0][1] == 1.0);
  // Row 2 is (-K v^2, 2 K v) with K = 126/125, v = 20.
  CHECK(a[1][0] == doctest::Approx(-403.2).epsilon(1e-13));
  CHECK(a[1][1] == doctest::Approx(40.32).epsilon(1e-14));

  CHECK_THROWS_AS(tm_::flux({0.0, 0.0}, 125.0, 1e-7), DomainError);
}

TEST_CASE("Jacobian matches a finite difference of the flux") {
  const tm_::ConservedState u{0.1, 2.0};
  const auto a = tm_::jacobian(u, 125.0);
  const double h = 1e-6 * std::hypot(u.rho, u.q);

  tm_::ConservedState up = u, um = u;
  up.rho += h;
  um.rho -= h;
  auto fp = tm_::flux(up, 125.0), fm = tm_::flux(um, 125.0);
  CHECK((fp.f1 - fm.f1) / (2 * h) == doctest::Approx(a[0][0]).epsilon(1e-7));
  CHECK((fp.f2 - fm.f2) / (2 * h) == doctest::Approx(a[1][0]).epsilon(1e-7));

  up = um = u;
  up.q += h;
  um.q -= h;
  fp = tm_::flux(up, 125.0);
  fm = tm_::flux(um, 125.0);
  CHECK((fp.f1 - fm.f1) / (2 * h) == doctest::Approx(a[0][1]).epsilon(1e-7));
  CHECK((fp.f2 - fm.f2) / (2 * h) == doctest::Approx(a[1][1]).epsilon(1e-7));
}

TEST_CASE("eigenvalues: frozen pair and Jacobian consistency") {
  const auto lam = tm_::eigenvalues(30.0, 125.0);
  CHECK(lam[0] == doctest::Approx(27.5460066815227622).epsilon(1e-14));
  CHECK(lam[1] == doctest::Approx(32.9339933184772378).epsilon(1e-14));
  CHECK(lam[1] > 30.0);  // second characteristic outruns the traffic

  // A v - lambda v = 0 for the eigenvector (1, lambda).
  const tm_::ConservedState u{0.1, 3.0};
  const auto a = tm_::jacobian(u, 125.0);
  for (double l : tm_::eigenvalues(30.0, 125.0)) {
    const double r0 = a[0][0] + a[0][1] * l - l;
    const double r1 = a[1][0] + a[1][1] * l - l * l;
    CHECK(std::fabs(r0) < 1e-12);
    CHECK(std::fabs(r1) < 1e-12 * std::fabs(a[1][0]));
  }
}

TEST_CASE("kinetic optimal velocity reduces to v") {
  // With a constant shape parameter the kinetic relaxation target collapses
  // onto the current speed; the solver must use the equilibrium curve.
  CHECK(tm_::kinetic_optimal_velocity(0.1, 20.0, kDefault) ==
        doctest::Approx(20.0).epsilon(1e-12));
  CHECK(tm_::optimal_velocity(0.1, 20.0, kDefault) ==
        doctest::Approx(tm_::equilibrium_speed(0.1, kDefault)).epsilon(1e-15));
}

TEST_CASE("source assembly") {
  const tm_::ConservedState u{0.1, 2.0};
  const auto s = tm_::source(u, 0.644151113134333, -1.984, 0.5, 0.01, 8.0);
  CHECK(s.s1 == 0.0);
  const double expected = 0.1 * (0.644151113134333 - 20.0) / 8.0 - (-1.984) * 0.01 + 0.5;
  CHECK(s.s2 == doctest::Approx(expected).epsilon(1e-14));
}
