#pragma once

#include <functional>

#include "traffic/params.hpp"

namespace traffic::kinetic {

/// Local macroscopic traffic state with its velocity gradient.
struct KineticPoint {
  double rho = 0.0;    ///< density [veh/m]
  double v = 0.0;      ///< mean velocity [m/s]
  double dv_dx = 0.0;  ///< velocity gradient [1/s]
};

/// Second and third central velocity moments carried as independent fields.
struct GradMoments {
  double pressure = 0.0;      ///< traffic pressure [veh m/s^2]
  double third_moment = 0.0;  ///< third central moment [veh m^2/s^3]
};

/// Expansion coefficients of the moment-closure distribution (orders 0..3).
struct GradCoefficients {
  double c0 = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
};

/// Density-dependent driver aggressiveness w(rho).
/// w(0) = w(rho_0) = 1 exactly; maximum w_c at rho = rho_c.
/// Throws DomainError for rho outside [0, rho_0].
double aggressiveness(double rho, const ModelParams& p);

/// Collective relaxation time tau0 = tau / (2 (w - 1)).
/// Throws SingularityError for w <= 1.
double collective_relaxation_time(double w, double tau);

/// Velocity variance Theta = v^2 / alpha.
double velocity_variance(double v, double alpha);

/// Interaction factor (1 - p) = alpha (w - 1) / (rho v tau) implied by a
/// constant shape parameter. Diagnostic only; never drives the solver.
double passing_factor(double rho, double v, double w, double tau, double alpha);

/// Equilibrium phase density: gamma-distributed velocity with shape alpha and
/// mean v, scaled by rho. Evaluated in log space so alpha ~ 125 is safe.
double equilibrium_distribution(double c, double rho, double v, double alpha);

/// First-order gradient correction to the equilibrium distribution:
///   f1 = -(f0/2) (tau/(w-1)) [alpha x^2 - 2x - 1] dv_dx,   x = c/v - 1.
double first_order_distribution(double c, const KineticPoint& point, const ModelParams& p);

/// Equilibrium traffic pressure rho v^2 / alpha.
double equilibrium_pressure(double rho, double v, double alpha);

/// Equilibrium third central moment 2 rho v^3 / alpha^2.
double equilibrium_third_moment(double rho, double v, double alpha);

/// Gradient-corrected traffic pressure
///   pi = rho v^2/alpha - 2 (rho v^2/alpha) tau0 ((alpha+1)/alpha) dv_dx.
double ce_pressure(const KineticPoint& point, const ModelParams& p);

/// Traffic viscosity mu = 2 (rho v^2/alpha) tau0 (alpha+1)/alpha >= 0.
/// Returns 0 for rho == 0 or v == 0; throws SingularityError when rho > 0
/// leaves the aggressiveness at w <= 1 (rho == rho_0). Regularization near
/// those limits is the solver's job, not this layer's.
double viscosity(double rho, double v, const ModelParams& p);

/// True when the gradient-corrected distribution f0 + f1 dips negative
/// somewhere in the bulk of the velocity distribution (c within mean plus
/// ten standard deviations). Signals that the closure has left its validity
/// range; no clipping is applied anywhere.
bool first_order_goes_negative(const KineticPoint& point, const ModelParams& p);

/// Orthonormal polynomial P_n of the gamma weight at dimensionless velocity
/// s = alpha c / v, by the three-term recurrence.
double orthonormal_polynomial(int n, double alpha, double s);

/// Expansion coefficients reproducing the supplied moments: c0 = 1, c1 = 0,
/// c2 from the pressure deviation, c3 from pressure and third moment.
GradCoefficients grad_coefficients(const GradMoments& m, double rho, double v, double alpha);

/// Moment-closure distribution truncated after the pressure term; the second
/// central moment of the result is the supplied pressure.
double grad_distribution(double c, double rho, double v, double pressure, double alpha);

/// Closure for the third central moment:
///   phi = 3 (phi0 / pi0) (pi - (2/3) pi0).
double third_moment_closure(double pressure, double rho, double v, double alpha);

/// First iterate of the pressure deviator from the moment system; equals
/// ce_pressure - equilibrium_pressure identically, and -mu dv_dx.
double maxwellian_first_iterate(const KineticPoint& point, const ModelParams& p);

/// Numerical central moment  integral (c - v)^k f(c) dc  over [0, inf) via
/// generalized Gauss-Laguerre quadrature in s = alpha c / v. Starts at 64
/// nodes and doubles until two successive estimates agree to 1e-9 relative
/// (against abs_scale when the moment itself is ~0). Throws AccuracyError
/// with the achieved estimate if 1024 nodes do not converge.
double moment_quadrature(const std::function<double(double)>& f, int k, double rho,
                         double v, double alpha, double abs_scale = 0.0);

}  // namespace traffic::kinetic
