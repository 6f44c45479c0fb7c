#pragma once

#include "traffic/errors.hpp"

namespace traffic {

/// Physical and model constants, SI units throughout (m, s, veh).
///
/// Defaults are the blockade-scenario values: alpha = 125, v0 = 30 m/s,
/// rho0 = 0.2 veh/m, a = 3.9, tau = 8 s, with the aggressiveness curve
/// peaking at w_c = 1.2 and rho_c/rho0 = 0.2.
struct ModelParams {
  double alpha = 125.0;  ///< shape parameter of the equilibrium velocity distribution (> 1)
  double tau = 8.0;      ///< individual relaxation time [s]
  double w_c = 1.2;      ///< peak driver aggressiveness (> 1)
  double rho_c = 0.04;   ///< critical density, argmax of aggressiveness [veh/m]
  double rho_0 = 0.2;    ///< jam density [veh/m]
  double v_0 = 30.0;     ///< free-flow speed [m/s]
  double a = 3.9;        ///< equilibrium-curve offset (dimensionless)

  void validate() const {
    if (!(alpha > 1.0)) throw DomainError("ModelParams: alpha must be > 1");
    if (!(tau > 0.0)) throw DomainError("ModelParams: tau must be > 0");
    if (!(w_c > 1.0)) throw DomainError("ModelParams: w_c must be > 1");
    if (!(rho_c > 0.0 && rho_c < rho_0)) throw DomainError("ModelParams: need 0 < rho_c < rho_0");
    if (!(v_0 > 0.0)) throw DomainError("ModelParams: v_0 must be > 0");
    if (!(a > 0.0)) throw DomainError("ModelParams: a must be > 0");
  }
};

}  // namespace traffic
