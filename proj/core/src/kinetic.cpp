#include "traffic/kinetic.hpp"

#include <cmath>
#include <limits>

#include "traffic/gauss_laguerre.hpp"

namespace traffic::kinetic {

double aggressiveness(double rho, const ModelParams& p) {
  if (!(rho >= 0.0 && rho <= p.rho_0))
    throw DomainError("aggressiveness: rho outside [0, rho_0]");
  if (rho == 0.0) return 1.0;
  const double exponent = (p.rho_0 - p.rho_c) / p.rho_c;
  const double base = (p.rho_0 - rho) / (p.rho_0 - p.rho_c);
  return 1.0 + (p.w_c - 1.0) * (rho / p.rho_c) * std::pow(base, exponent);
}

double collective_relaxation_time(double w, double tau) {
  if (!(w > 1.0))
    throw SingularityError("collective_relaxation_time: diverges for w <= 1");
  return tau / (2.0 * (w - 1.0));
}

double velocity_variance(double v, double alpha) {
  return v * v / alpha;
}

double passing_factor(double rho, double v, double w, double tau, double alpha) {
  if (!(rho > 0.0 && v > 0.0 && tau > 0.0))
    throw DomainError("passing_factor: rho, v and tau must be positive");
  return alpha * (w - 1.0) / (rho * v * tau);
}

double equilibrium_distribution(double c, double rho, double v, double alpha) {
  if (!(v > 0.0)) throw DomainError("equilibrium_distribution: v must be > 0");
  if (!(rho > 0.0)) throw DomainError("equilibrium_distribution: rho must be > 0");
  if (c < 0.0) throw DomainError("equilibrium_distribution: c must be >= 0");
  const double s = alpha * c / v;
  if (s == 0.0) return alpha > 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
  const double log_f = std::log(alpha * rho / v) + (alpha - 1.0) * std::log(s) - s -
                       std::lgamma(alpha);
  return std::exp(log_f);
}

double first_order_distribution(double c, const KineticPoint& point, const ModelParams& p) {
  const double w = aggressiveness(point.rho, p);
  if (!(w > 1.0))
    throw SingularityError("first_order_distribution: aggressiveness at w <= 1");
  if (point.dv_dx == 0.0) return 0.0;
  const double f0 = equilibrium_distribution(c, point.rho, point.v, p.alpha);
  const double x = c / point.v - 1.0;
  const double bracket = p.alpha * x * x - 2.0 * x - 1.0;
  return -0.5 * f0 * (p.tau / (w - 1.0)) * bracket * point.dv_dx;
}

double equilibrium_pressure(double rho, double v, double alpha) {
  return rho * v * v / alpha;
}

double equilibrium_third_moment(double rho, double v, double alpha) {
  return 2.0 * rho * v * v * v / (alpha * alpha);
}

double ce_pressure(const KineticPoint& point, const ModelParams& p) {
  if (point.rho == 0.0) return 0.0;
  const double pi0 = equilibrium_pressure(point.rho, point.v, p.alpha);
  if (point.dv_dx == 0.0) return pi0;
  const double w = aggressiveness(point.rho, p);
  const double tau0 = collective_relaxation_time(w, p.tau);
  return pi0 - 2.0 * pi0 * tau0 * ((p.alpha + 1.0) / p.alpha) * point.dv_dx;
}

double viscosity(double rho, double v, const ModelParams& p) {
  if (rho == 0.0 || v == 0.0) return 0.0;
  const double w = aggressiveness(rho, p);
  const double tau0 = collective_relaxation_time(w, p.tau);
  return 2.0 * equilibrium_pressure(rho, v, p.alpha) * tau0 * (p.alpha + 1.0) / p.alpha;
}

bool first_order_goes_negative(const KineticPoint& point, const ModelParams& p) {
  if (point.dv_dx == 0.0) return false;
  const double w = aggressiveness(point.rho, p);
  const double tau0 = collective_relaxation_time(w, p.tau);
  // f0 + f1 = f0 (1 - tau0 g(x) dv_dx) with g(x) = alpha x^2 - 2x - 1;
  // scan x = c/v - 1 over the bulk of the distribution.
  const double x_max = 10.0 / std::sqrt(p.alpha);
  const int samples = 2048;
  for (int i = 0; i <= samples; ++i) {
    const double x = -1.0 + (x_max + 1.0) * i / samples;
    const double g = p.alpha * x * x - 2.0 * x - 1.0;
    if (1.0 - tau0 * g * point.dv_dx < 0.0) return true;
  }
  return false;
}

double orthonormal_polynomial(int n, double alpha, double s) {
  if (n < 0) throw DomainError("orthonormal_polynomial: n must be >= 0");
  double prev = 1.0;  // P_0
  if (n == 0) return prev;
  double cur = (s - alpha) / std::sqrt(alpha);  // P_1
  for (int k = 1; k < n; ++k) {
    const double norm = std::sqrt((k + 1.0) * (k + alpha));
    const double next =
        ((s - 2.0 * k - alpha) * cur - std::sqrt(k * (k + alpha - 1.0)) * prev) / norm;
    prev = cur;
    cur = next;
  }
  return cur;
}

GradCoefficients grad_coefficients(const GradMoments& m, double rho, double v, double alpha) {
  if (!(rho > 0.0 && v > 0.0))
    throw DomainError("grad_coefficients: rho and v must be positive");
  const double pi0 = equilibrium_pressure(rho, v, alpha);
  const double phi0 = equilibrium_third_moment(rho, v, alpha);
  const double dpi = (m.pressure - pi0) / pi0;
  const double dphi = (m.third_moment - phi0) / phi0;
  GradCoefficients c;
  c.c2 = std::sqrt(alpha / (2.0 * (alpha + 1.0))) * dpi;
  c.c3 = std::sqrt(2.0 * alpha / (3.0 * (alpha + 1.0) * (alpha + 2.0))) * (dphi - 3.0 * dpi);
  return c;
}

double grad_distribution(double c, double rho, double v, double pressure, double alpha) {
  const double f0 = equilibrium_distribution(c, rho, v, alpha);
  const double pi0 = equilibrium_pressure(rho, v, alpha);
  const double s = alpha * c / v;
  const double poly = s * s - 2.0 * (alpha + 1.0) * s + alpha * (alpha + 1.0);
  return f0 * (1.0 + poly / (2.0 * (alpha + 1.0)) * (pressure - pi0) / pi0);
}

double third_moment_closure(double pressure, double rho, double v, double alpha) {
  const double pi0 = equilibrium_pressure(rho, v, alpha);
  const double phi0 = equilibrium_third_moment(rho, v, alpha);
  return 3.0 * (phi0 / pi0) * (pressure - (2.0 / 3.0) * pi0);
}

double maxwellian_first_iterate(const KineticPoint& point, const ModelParams& p) {
  const double w = aggressiveness(point.rho, p);
  const double tau0 = collective_relaxation_time(w, p.tau);
  return -2.0 * equilibrium_pressure(point.rho, point.v, p.alpha) * tau0 *
         ((p.alpha + 1.0) / p.alpha) * point.dv_dx;
}

double moment_quadrature(const std::function<double(double)>& f, int k, double rho,
                         double v, double alpha, double abs_scale) {
  if (k < 0) throw DomainError("moment_quadrature: k must be >= 0");
  if (!(v > 0.0)) throw DomainError("moment_quadrature: v must be > 0");
  (void)rho;  // the scale of f itself; kept for the caller's bookkeeping

  const double log_gamma_alpha = std::lgamma(alpha);
  auto estimate = [&](int n) {
    const QuadratureRule& rule = gamma_quadrature(alpha, n);
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double s = rule.nodes[j];
      const double c = v * s / alpha;
      const double fc = f(c);
      if (fc == 0.0) continue;
      // Divide out the gamma density in log space; f/Phi grows only
      // polynomially for closure distributions, so this stays finite even
      // where both factors underflow.
      const double log_phi = (alpha - 1.0) * std::log(s) - s - log_gamma_alpha;
      const double ratio = std::copysign(
          std::exp(std::log(std::fabs(fc)) - log_phi), fc);
      sum += rule.weights[j] * std::pow(c - v, k) * ratio;
    }
    return sum * v / alpha;
  };

  constexpr double kRelTol = 1e-9;
  double prev = estimate(64);
  double diff = std::numeric_limits<double>::infinity();
  for (int n = 128; n <= 1024; n *= 2) {
    const double cur = estimate(n);
    diff = std::fabs(cur - prev);
    const double scale = std::max({std::fabs(cur), std::fabs(prev), abs_scale});
    if (diff <= kRelTol * scale || diff == 0.0) return cur;
    prev = cur;
  }
  throw AccuracyError("moment_quadrature: no convergence at 1024 nodes", prev, diff);
}

}  // namespace traffic::kinetic
