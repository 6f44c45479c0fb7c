#include <cmath>

#include <doctest.h>

#include "traffic/errors.hpp"
#include "traffic/gauss_laguerre.hpp"
#include "traffic/kinetic.hpp"

using namespace traffic;
namespace tk = traffic::kinetic;

namespace {
const ModelParams kDefault;
}

TEST_CASE("aggressiveness endpoints, peak and frozen values") {
  CHECK(tk::aggressiveness(0.0, kDefault) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tk::aggressiveness(kDefault.rho_0, kDefault) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tk::aggressiveness(kDefault.rho_c, kDefault) == doctest::Approx(1.2).epsilon(1e-15));

  // Frozen: the curve at rho = 0.1 and rho = 0.198 evaluates exactly in
  // binary (power of a dyadic rational with integer-like exponent 4).
  CHECK(tk::aggressiveness(0.1, kDefault) == doctest::Approx(1.0762939453125).epsilon(1e-15));
  CHECK(tk::aggressiveness(0.198, kDefault) ==
        doctest::Approx(1.000000024169921875).epsilon(1e-12));

  CHECK_THROWS_AS(tk::aggressiveness(-0.01, kDefault), DomainError);
  CHECK_THROWS_AS(tk::aggressiveness(0.21, kDefault), DomainError);
}

TEST_CASE("aggressiveness peaks at rho_c over a fine grid") {
  const double w_peak = tk::aggressiveness(kDefault.rho_c, kDefault);
  for (int i = 0; i <= 10000; ++i) {
    const double rho = kDefault.rho_0 * i / 10000.0;
    CHECK(tk::aggressiveness(rho, kDefault) <= w_peak + 1e-15);
  }
}

TEST_CASE("collective relaxation time") {
  CHECK(tk::collective_relaxation_time(1.2, 8.0) == doctest::Approx(20.0).epsilon(1e-15));
  // Frozen: tau0 at w(0.1) is exactly 32768/625.
  CHECK(tk::collective_relaxation_time(tk::aggressiveness(0.1, kDefault), 8.0) ==
        doctest::Approx(52.4288).epsilon(1e-13));
  CHECK_THROWS_AS(tk::collective_relaxation_time(1.0, 8.0), SingularityError);
  CHECK_THROWS_AS(tk::collective_relaxation_time(0.9, 8.0), SingularityError);
}

TEST_CASE("variance and passing factor") {
  CHECK(tk::velocity_variance(20.0, 125.0) == doctest::Approx(3.2).epsilon(1e-15));
  // Frozen: (1-p) at rho=0.1, v=20 under the default curve is 78125/131072.
  const double w = tk::aggressiveness(0.1, kDefault);
  CHECK(tk::passing_factor(0.1, 20.0, w, 8.0, 125.0) ==
        doctest::Approx(0.59604644775390625).epsilon(1e-13));
}

TEST_CASE("equilibrium distribution integrates to the density") {
  for (double alpha : {5.0, 50.0, 125.0}) {
    auto f0 = [&](double c) { return tk::equilibrium_distribution(c, 0.1, 20.0, alpha); };
    CHECK(tk::moment_quadrature(f0, 0, 0.1, 20.0, alpha) ==
          doctest::Approx(0.1).epsilon(1e-10));
  }
}

TEST_CASE("equilibrium moments in closed form") {
  CHECK(tk::equilibrium_pressure(0.1, 20.0, 125.0) == doctest::Approx(0.32).epsilon(1e-15));
  CHECK(tk::equilibrium_third_moment(0.1, 20.0, 125.0) ==
        doctest::Approx(0.1024).epsilon(1e-15));
}

TEST_CASE("viscosity closed form and edge cases") {
  // Frozen: mu(0.1, 20) = 2 * 0.32 * 52.4288 * 126/125 = 33.822867456.
  CHECK(tk::viscosity(0.1, 20.0, kDefault) == doctest::Approx(33.822867456).epsilon(1e-12));
  CHECK(tk::viscosity(0.0, 20.0, kDefault) == 0.0);
  CHECK(tk::viscosity(0.1, 0.0, kDefault) == 0.0);
  CHECK_THROWS_AS(tk::viscosity(kDefault.rho_0, 5.0, kDefault), SingularityError);
}

TEST_CASE("gradient-corrected pressure matches mu form") {
  const tk::KineticPoint point{0.1, 20.0, 0.01};
  const double mu = tk::viscosity(0.1, 20.0, kDefault);
  CHECK(tk::ce_pressure(point, kDefault) ==
        doctest::Approx(0.32 - mu * 0.01).epsilon(1e-14));
}

TEST_CASE("orthonormal polynomials against the quadrature weight") {
  for (double alpha : {5.0, 125.0}) {
    const QuadratureRule& rule = gamma_quadrature(alpha, 64);
    for (int n = 0; n <= 5; ++n)
      for (int m = 0; m <= 5; ++m) {
        double sum = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
          sum += rule.weights[j] * tk::orthonormal_polynomial(n, alpha, rule.nodes[j]) *
                 tk::orthonormal_polynomial(m, alpha, rule.nodes[j]);
        CHECK(std::fabs(sum - (n == m ? 1.0 : 0.0)) < 1e-10);
      }
  }
}

TEST_CASE("low-order polynomials in closed form") {
  const double alpha = 125.0, s = 130.0;
  CHECK(tk::orthonormal_polynomial(0, alpha, s) == 1.0);
  CHECK(tk::orthonormal_polynomial(1, alpha, s) ==
        doctest::Approx((s - alpha) / std::sqrt(alpha)).epsilon(1e-15));
  const double p2 = (s * s - 2.0 * (alpha + 1.0) * s + alpha * (alpha + 1.0)) /
                    std::sqrt(2.0 * alpha * (alpha + 1.0));
  CHECK(tk::orthonormal_polynomial(2, alpha, s) == doctest::Approx(p2).epsilon(1e-12));
}

TEST_CASE("expansion coefficients from moments") {
  const double rho = 0.1, v = 20.0, alpha = 125.0;
  const double pi0 = tk::equilibrium_pressure(rho, v, alpha);
  const double phi0 = tk::equilibrium_third_moment(rho, v, alpha);

  SUBCASE("equilibrium moments give the bare expansion") {
    const auto c = tk::grad_coefficients({pi0, phi0}, rho, v, alpha);
    CHECK(c.c0 == 1.0);
    CHECK(c.c1 == 0.0);
    CHECK(std::fabs(c.c2) < 1e-15);
    CHECK(std::fabs(c.c3) < 1e-15);
  }

  SUBCASE("frozen pressure deviation") {
    // Frozen: c2 at pi = 1.5 pi0, alpha = 125.
    const auto c = tk::grad_coefficients({1.5 * pi0, phi0}, rho, v, alpha);
    CHECK(c.c2 == doctest::Approx(0.352147606136882).epsilon(1e-13));
  }
}

TEST_CASE("moment-closure distribution reproduces its pressure") {
  const double rho = 0.1, v = 20.0, alpha = 125.0;
  const double pi0 = tk::equilibrium_pressure(rho, v, alpha);
  const double pi = 1.2 * pi0;
  auto f = [&](double c) { return tk::grad_distribution(c, rho, v, pi, alpha); };
  CHECK(tk::moment_quadrature(f, 0, rho, v, alpha) == doctest::Approx(rho).epsilon(1e-9));
  auto cf = [&](double c) { return c * f(c); };
  CHECK(tk::moment_quadrature(cf, 0, rho, v, alpha) ==
        doctest::Approx(rho * v).epsilon(1e-9));
  CHECK(tk::moment_quadrature(f, 2, rho, v, alpha) == doctest::Approx(pi).epsilon(1e-8));
}

TEST_CASE("third-moment closure and first iterate consistency") {
  const double rho = 0.1, v = 20.0, alpha = 125.0;
  const double pi0 = tk::equilibrium_pressure(rho, v, alpha);
  const double phi0 = tk::equilibrium_third_moment(rho, v, alpha);
  CHECK(tk::third_moment_closure(pi0, rho, v, alpha) ==
        doctest::Approx(phi0).epsilon(1e-14));

  const tk::KineticPoint point{rho, v, 0.01};
  CHECK(tk::maxwellian_first_iterate(point, kDefault) ==
        doctest::Approx(-tk::viscosity(rho, v, kDefault) * 0.01).epsilon(1e-13));
}

TEST_CASE("gradient correction turns negative for steep gradients only") {
  CHECK_FALSE(tk::first_order_goes_negative({0.1, 20.0, 1e-4}, kDefault));
  CHECK(tk::first_order_goes_negative({0.1, 20.0, 0.5}, kDefault));
}

TEST_CASE("quadrature rule basics") {
  const QuadratureRule& rule = gamma_quadrature(125.0, 64);
  double wsum = 0.0, mean = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    wsum += rule.weights[j];
    mean += rule.weights[j] * rule.nodes[j];
  }
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(mean == doctest::Approx(125.0).epsilon(1e-13));
  CHECK(&gamma_quadrature(125.0, 64) == &rule);  // cached
}
