#include "traffic/validation.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "traffic/errors.hpp"
#include "traffic/gauss_laguerre.hpp"
#include "traffic/kinetic.hpp"
#include "traffic/macro.hpp"
#include "traffic/roe.hpp"

namespace traffic::validation {

namespace {

namespace tk = traffic::kinetic;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

SuiteResult finish(SuiteResult r) {
  r.passed = r.max_error <= r.tolerance;
  return r;
}

}  // namespace

SuiteResult parameters_suite(const ModelParams& p) {
  SuiteResult r{"parameters", false, 0.0, 0.0, "all invariants hold"};
  try {
    p.validate();
    r.passed = true;
  } catch (const DomainError& e) {
    r.detail = e.what();
  }
  return r;
}

SuiteResult orthonormality_suite(const ModelParams& p) {
  SuiteResult r{"orthonormality", false, 0.0, 1e-10, ""};
  for (double alpha : {p.alpha, 5.0}) {
    const QuadratureRule& rule = gamma_quadrature(alpha, 64);
    for (int n = 0; n <= 5; ++n) {
      for (int m = 0; m <= 5; ++m) {
        double sum = 0.0;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j)
          sum += rule.weights[j] * tk::orthonormal_polynomial(n, alpha, rule.nodes[j]) *
                 tk::orthonormal_polynomial(m, alpha, rule.nodes[j]);
        r.max_error = std::max(r.max_error, std::fabs(sum - (n == m ? 1.0 : 0.0)));
      }
    }
  }
  r.detail = "n,m <= 5 at alpha=" + fmt(p.alpha) + " and alpha=5";
  return finish(r);
}

SuiteResult moment_suite(const ModelParams& p) {
  SuiteResult r{"moments", false, 0.0, 1e-6, ""};
  double worst_f0 = 0.0, worst_f1 = 0.0, worst_pressure = 0.0;
  const double rho = 0.1, v = 20.0;

  for (double alpha : {5.0, 50.0, 125.0}) {
    ModelParams q = p;
    q.alpha = alpha;

    auto f0 = [&](double c) { return tk::equilibrium_distribution(c, rho, v, alpha); };
    auto cf0 = [&](double c) { return c * f0(c); };
    const double m0 = tk::moment_quadrature(f0, 0, rho, v, alpha);
    const double m1_raw = tk::moment_quadrature(cf0, 0, rho, v, alpha);
    const double m2 = tk::moment_quadrature(f0, 2, rho, v, alpha);
    const double m3 = tk::moment_quadrature(f0, 3, rho, v, alpha);
    worst_f0 = std::max({worst_f0, std::fabs(m0 / rho - 1.0),
                         std::fabs(m1_raw / (rho * v) - 1.0),
                         std::fabs(m2 / tk::equilibrium_pressure(rho, v, alpha) - 1.0),
                         std::fabs(m3 / tk::equilibrium_third_moment(rho, v, alpha) - 1.0)});

    const tk::KineticPoint point{rho, v, 0.005};
    auto f1 = [&](double c) { return tk::first_order_distribution(c, point, q); };
    auto full = [&](double c) { return f0(c) + f1(c); };
    const double f1_m0 = tk::moment_quadrature(f1, 0, rho, v, alpha, rho);
    auto cf1 = [&](double c) { return c * f1(c); };
    const double f1_m1 = tk::moment_quadrature(cf1, 0, rho, v, alpha, rho * v);
    worst_f1 = std::max({worst_f1, std::fabs(f1_m0 / rho), std::fabs(f1_m1 / (rho * v))});

    const double pressure = tk::moment_quadrature(full, 2, rho, v, alpha);
    worst_pressure =
        std::max(worst_pressure, std::fabs(pressure / tk::ce_pressure(point, q) - 1.0));
  }

  // Equilibrium and gradient-correction moments carry a tighter 1e-8 target
  // than the corrected pressure (1e-6).
  r.detail = "f0 moments err=" + fmt(worst_f0) + " (tol 1e-8), f1 constraint err=" +
             fmt(worst_f1) + " (tol 1e-8), corrected pressure err=" + fmt(worst_pressure) +
             " (tol 1e-6)";
  r.passed = worst_f0 <= 1e-8 && worst_f1 <= 1e-8 && worst_pressure <= 1e-6;
  r.max_error = std::max({worst_f0, worst_f1, worst_pressure});
  return r;
}

SuiteResult ce_grad_suite(const ModelParams& p) {
  SuiteResult r{"ce_grad_equivalence", false, 0.0, 1e-12, ""};
  const int nr = 25, nv = 20, ng = 20;
  for (int i = 0; i < nr; ++i) {
    const double rho = 0.005 + (0.19 - 0.005) * i / (nr - 1);
    for (int j = 0; j < nv; ++j) {
      const double v = 0.5 + (30.0 - 0.5) * j / (nv - 1);
      for (int k = 0; k < ng; ++k) {
        const double dv_dx = -0.02 + 0.04 * k / (ng - 1);
        const tk::KineticPoint point{rho, v, dv_dx};
        const double iterate = tk::maxwellian_first_iterate(point, p);
        const double deviator =
            tk::ce_pressure(point, p) - tk::equilibrium_pressure(rho, v, p.alpha);
        const double scale =
            std::max({std::fabs(iterate), std::fabs(deviator), 1e-300});
        r.max_error = std::max(r.max_error, std::fabs(iterate - deviator) / scale);
        const double mu_form = -tk::viscosity(rho, v, p) * dv_dx;
        r.max_error = std::max(r.max_error, std::fabs(iterate - mu_form) /
                                                std::max(std::fabs(iterate), 1e-300));
      }
    }
  }
  r.detail = "10^4-point grid rho in [0.005,0.19], v in [0.5,30], dv_dx in [-0.02,0.02]";
  return finish(r);
}

SuiteResult roe_suite(const ModelParams& p) {
  SuiteResult r{"roe_properties", false, 0.0, 1e-12, ""};
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> rho_dist(1e-3, 0.2);
  std::uniform_real_distribution<double> v_dist(0.0, 30.0);
  const double floor = 1e-6 * p.rho_0;

  for (int trial = 0; trial < 1000; ++trial) {
    const double rho_l = rho_dist(rng), rho_r = rho_dist(rng);
    macro::ConservedState left{rho_l, rho_l * v_dist(rng)};
    macro::ConservedState right{rho_r, rho_r * v_dist(rng)};

    const auto d = roe::roe_decomposition(left, right, p.alpha, floor);
    const auto fl = macro::flux(left, p.alpha);
    const auto fr = macro::flux(right, p.alpha);
    const double df1 = fr.f1 - fl.f1, df2 = fr.f2 - fl.f2;
    const double du1 = right.rho - left.rho, du2 = right.q - left.q;

    // dF = sum_k sigma_k lambda_k e_k  (the shock-capturing identity at the
    // averaged Jacobian) and dU = sum_k sigma_k e_k.
    double rf1 = 0.0, rf2 = 0.0, ru1 = 0.0, ru2 = 0.0;
    for (int k = 0; k < 2; ++k) {
      rf1 += d.sigma[k] * d.lambda[k] * d.evec[k][0];
      rf2 += d.sigma[k] * d.lambda[k] * d.evec[k][1];
      ru1 += d.sigma[k] * d.evec[k][0];
      ru2 += d.sigma[k] * d.evec[k][1];
    }
    const double f_scale = std::max({std::fabs(df1), std::fabs(df2), 1e-300});
    const double u_scale = std::max({std::fabs(du1), std::fabs(du2), 1e-300});
    r.max_error = std::max({r.max_error, std::hypot(rf1 - df1, rf2 - df2) / f_scale,
                            std::hypot(ru1 - du1, ru2 - du2) / u_scale});

    // Consistency F(U, U) = F(U), exact.
    const auto self_flux = roe::roe_flux(left, left, p.alpha, floor);
    if (self_flux.f1 != fl.f1 || self_flux.f2 != fl.f2)
      r.max_error = std::max(r.max_error, 1.0);
  }
  r.detail = "1000 random state pairs, seed 20240817";
  return finish(r);
}

std::vector<SuiteResult> run_all_suites(const ModelParams& p) {
  std::vector<SuiteResult> results;
  results.push_back(parameters_suite(p));
  if (!results.front().passed) return results;
  results.push_back(orthonormality_suite(p));
  results.push_back(moment_suite(p));
  results.push_back(ce_grad_suite(p));
  results.push_back(roe_suite(p));
  return results;
}

void write_report(const std::vector<SuiteResult>& results, std::ostream& os) {
  for (const auto& r : results) {
    os << "suite=" << r.name << " status=" << (r.passed ? "pass" : "fail")
       << " max_error=" << fmt(r.max_error) << " tolerance=" << fmt(r.tolerance)
       << " detail=\"" << r.detail << "\"\n";
  }
}

}  // namespace traffic::validation
