#pragma once

#include <array>

#include "traffic/params.hpp"

namespace traffic::macro {

/// Conserved cell state: density and flow q = rho v.
struct ConservedState {
  double rho = 0.0;  ///< [veh/m]
  double q = 0.0;    ///< [veh/s]

  double velocity(double density_floor) const {
    return q / (rho > density_floor ? rho : density_floor);
  }
};

/// Conservative flux (q, rho v^2 + rho c^2).
struct FluxVector {
  double f1 = 0.0;  ///< [veh/s]
  double f2 = 0.0;  ///< [veh m/s^2]
};

/// Momentum source; continuity has none.
struct SourceVector {
  double s1 = 0.0;  ///< always 0 [veh/(m s)]
  double s2 = 0.0;  ///< [veh/s^2]
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// Traffic sound speed c = v / sqrt(alpha).
double sound_speed(double v, double alpha);

/// Equilibrium speed-density curve
///   v_e = (v_0/2) (tanh(rho_0/rho - a) + tanh(a)),
/// monotone non-increasing in rho. Throws DomainError for rho <= 0; callers
/// apply the density floor first.
double equilibrium_speed(double rho, const ModelParams& p);

/// Optimal velocity driving the relaxation source. Uses the equilibrium
/// curve u(rho, v) = v_e(rho); the velocity argument is accepted for
/// interface symmetry with the kinetic form below but does not enter.
double optimal_velocity(double rho, double v, const ModelParams& p);

/// Kinetic form of the optimal velocity, w v - tau (1-p) pi0. Exposed for
/// diagnostics only; with a constant shape parameter it reduces to v and the
/// relaxation source would cancel, so it never drives the solver.
double kinetic_optimal_velocity(double rho, double v, const ModelParams& p);

/// Anticipation coefficient b = -(alpha-1) rho v / alpha <= 0.
double anticipation_coefficient(double rho, double v, double alpha);

/// Conservative flux of the state. Throws DomainError when rho is at or
/// below the supplied floor (degenerate state).
FluxVector flux(const ConservedState& u, double alpha, double density_floor = 0.0);

/// Flux Jacobian rows [[0, 1], [-K v^2, 2 K v]] with K = (alpha+1)/alpha.
Matrix2 jacobian(const ConservedState& u, double alpha, double density_floor = 0.0);

/// Characteristic speeds ((alpha+1 -+ sqrt(alpha+1))/alpha) v; the second one
/// exceeds v for all v > 0.
std::array<double, 2> eigenvalues(double v, double alpha);

/// Assembles the momentum source s2 = rho (u - v)/tau - b v_x + mu_vx_div,
/// where mu_vx_div is the discretized (mu v_x)_x supplied by the solver.
SourceVector source(const ConservedState& u, double u_opt, double b, double mu_vx_div,
                    double v_x, double tau, double density_floor = 0.0);

}  // namespace traffic::macro
