#include "traffic/macro.hpp"

#include <cmath>

#include "traffic/kinetic.hpp"

namespace traffic::macro {

double sound_speed(double v, double alpha) {
  return v / std::sqrt(alpha);
}

double equilibrium_speed(double rho, const ModelParams& p) {
  if (!(rho > 0.0)) throw DomainError("equilibrium_speed: rho must be > 0");
  return 0.5 * p.v_0 * (std::tanh(p.rho_0 / rho - p.a) + std::tanh(p.a));
}

double optimal_velocity(double rho, double /*v*/, const ModelParams& p) {
  return equilibrium_speed(rho, p);
}

double kinetic_optimal_velocity(double rho, double v, const ModelParams& p) {
  const double w = kinetic::aggressiveness(rho, p);
  const double one_minus_p = kinetic::passing_factor(rho, v, w, p.tau, p.alpha);
  return w * v - p.tau * one_minus_p * kinetic::equilibrium_pressure(rho, v, p.alpha);
}

double anticipation_coefficient(double rho, double v, double alpha) {
  return -(alpha - 1.0) * rho * v / alpha;
}

FluxVector flux(const ConservedState& u, double alpha, double density_floor) {
  if (!(u.rho > 0.0) || u.rho < density_floor)
    throw DomainError("flux: density below floor");
  const double k = (alpha + 1.0) / alpha;
  return {u.q, k * u.q * u.q / u.rho};
}

Matrix2 jacobian(const ConservedState& u, double alpha, double density_floor) {
  if (!(u.rho > 0.0) || u.rho < density_floor)
    throw DomainError("jacobian: density below floor");
  const double k = (alpha + 1.0) / alpha;
  const double v = u.q / u.rho;
  return {{{0.0, 1.0}, {-k * v * v, 2.0 * k * v}}};
}

std::array<double, 2> eigenvalues(double v, double alpha) {
  const double root = std::sqrt(alpha + 1.0);
  return {(alpha + 1.0 - root) / alpha * v, (alpha + 1.0 + root) / alpha * v};
}

SourceVector source(const ConservedState& u, double u_opt, double b, double mu_vx_div,
                    double v_x, double tau, double density_floor) {
  const double v = u.velocity(density_floor);
  return {0.0, u.rho * (u_opt - v) / tau - b * v_x + mu_vx_div};
}

}  // namespace traffic::macro
