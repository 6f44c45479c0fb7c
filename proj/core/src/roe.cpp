#include "traffic/roe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "traffic/errors.hpp"
#include "traffic/kinetic.hpp"

namespace traffic::roe {

namespace {

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t)>& body) {
  if (threads <= 1 || n < 64) {
    body(0, n);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(body, begin, end);
  }
  for (auto& t : pool) t.join();
}

// Viscosity as seen by the discretized source. Empty road (at or below the
// vacuum threshold) and jammed cells (rho >= rho_0, where the aggressiveness
// law pins w to 1 and the collective relaxation time diverges) transmit no
// viscous momentum; the closure is outside its validity range there.
double cell_viscosity(double rho, double v, const ModelParams& p, double vacuum_threshold) {
  if (rho <= vacuum_threshold || rho >= p.rho_0) return 0.0;
  return kinetic::viscosity(rho, v, p);
}

double max_wave_speed(const RoadField& field, const SolverConfig& cfg, const ModelParams& p) {
  double max_lambda = 0.0;
  for (const auto& cell : field.cells) {
    const double v = cell.velocity(cfg.density_floor);
    const auto lambda = macro::eigenvalues(v, p.alpha);
    max_lambda = std::max({max_lambda, std::fabs(lambda[0]), std::fabs(lambda[1])});
  }
  return max_lambda;
}

// Relaxation and anticipation parts of the source; the viscous flux is
// integrated implicitly in step() because its explicit stability bound
// collapses on near-empty cells (mu stays finite while rho -> 0).
double relaxation_source(const RoadField& field, std::size_t i, const ModelParams& p,
                         const SolverConfig& cfg) {
  const double vac = cfg.resolved_vacuum_threshold();
  const auto& cell = field.cells[i];
  if (cell.rho <= vac) return 0.0;

  const std::size_t n = field.size();
  const double v = cell.velocity(cfg.density_floor);
  const double v_left = field.cells[(i + n - 1) % n].velocity(cfg.density_floor);
  const double v_right = field.cells[(i + 1) % n].velocity(cfg.density_floor);
  const double u_opt = macro::optimal_velocity(std::max(cell.rho, cfg.density_floor), v, p);
  const double b = macro::anticipation_coefficient(cell.rho, v, p.alpha);
  const double v_x = (v_right - v_left) / (2.0 * field.dx);
  return macro::source(cell, u_opt, b, 0.0, v_x, p.tau, cfg.density_floor).s2;
}

// Thomas elimination; strictly diagonally dominant input.
void solve_tridiagonal(std::vector<double> a, std::vector<double> b, std::vector<double> c,
                       std::vector<double> r, std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = a[i] / b[i - 1];
    b[i] -= m * c[i - 1];
    r[i] -= m * r[i - 1];
  }
  x.resize(n);
  x[n - 1] = r[n - 1] / b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (r[i] - c[i] * x[i + 1]) / b[i];
}

// Backward-Euler update of the velocity diffusion (mu v_x)_x / rho on the
// periodic ring, via the Sherman-Morrison cyclic reduction.
void implicit_viscous_stage(RoadField& field, double dt, const ModelParams& p,
                            const SolverConfig& cfg) {
  const std::size_t n = field.size();
  if (n < 3) return;
  const double vac = cfg.resolved_vacuum_threshold();
  const double floor = cfg.density_floor;
  const double dx2 = field.dx * field.dx;

  std::vector<double> v(n), mu(n), mu_half(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = field.cells[i].velocity(floor);
    mu[i] = cell_viscosity(field.cells[i].rho, v[i], p, vac);
  }
  bool any_coupling = false;
  for (std::size_t i = 0; i < n; ++i) {  // interface i sits between cells i and i+1
    const std::size_t j = (i + 1) % n;
    mu_half[i] = (field.cells[i].rho <= vac || field.cells[j].rho <= vac)
                     ? 0.0
                     : 0.5 * (mu[i] + mu[j]);
    if (mu_half[i] > 0.0) any_coupling = true;
  }
  if (!any_coupling) return;

  std::vector<double> sub(n), diag(n), sup(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (field.cells[i].rho <= vac) {
      sub[i] = sup[i] = 0.0;
      diag[i] = 1.0;
      continue;
    }
    const double rho = std::max(field.cells[i].rho, floor);
    const double kl = dt * mu_half[(i + n - 1) % n] / (rho * dx2);
    const double kr = dt * mu_half[i] / (rho * dx2);
    sub[i] = -kl;
    sup[i] = -kr;
    diag[i] = 1.0 + kl + kr;
  }

  // Corner entries A[0][n-1] = sub[0], A[n-1][0] = sup[n-1].
  const double corner_beta = sub[0];
  const double corner_alpha = sup[n - 1];
  const double gamma = -diag[0];
  std::vector<double> diag_mod = diag;
  diag_mod[0] -= gamma;
  diag_mod[n - 1] -= corner_alpha * corner_beta / gamma;

  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = corner_alpha;

  std::vector<double> y, z;
  solve_tridiagonal(sub, diag_mod, sup, v, y);
  solve_tridiagonal(sub, diag_mod, sup, u, z);
  const double fact = (y[0] + corner_beta * y[n - 1] / gamma) /
                      (1.0 + z[0] + corner_beta * z[n - 1] / gamma);

  for (std::size_t i = 0; i < n; ++i) {
    if (field.cells[i].rho <= vac) continue;
    field.cells[i].q = field.cells[i].rho * (y[i] - fact * z[i]);
  }
}

}  // namespace

double RoadField::total_vehicles() const {
  double sum = 0.0;
  for (const auto& cell : cells) sum += cell.rho;
  return sum * dx;
}

void SolverConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("SolverConfig: cfl must be in (0, 1]");
  if (!(t_end >= 0.0)) throw ConfigError("SolverConfig: t_end must be >= 0");
  if (!(snapshot_interval > 0.0))
    throw ConfigError("SolverConfig: snapshot_interval must be > 0");
  if (!(density_floor > 0.0)) throw ConfigError("SolverConfig: density_floor must be > 0");
  if (threads < 1) throw ConfigError("SolverConfig: threads must be >= 1");
}

double roe_average_velocity(const macro::ConservedState& left,
                            const macro::ConservedState& right, double density_floor) {
  const double vl = left.velocity(density_floor);
  const double vr = right.velocity(density_floor);
  if (left.rho <= density_floor && right.rho <= density_floor)
    return 0.5 * (vl + vr);
  const double wl = std::sqrt(std::max(left.rho, density_floor));
  const double wr = std::sqrt(std::max(right.rho, density_floor));
  return (wl * vl + wr * vr) / (wl + wr);
}

RoeDecomposition roe_decomposition(const macro::ConservedState& left,
                                   const macro::ConservedState& right, double alpha,
                                   double density_floor) {
  RoeDecomposition d;
  const double vbar = roe_average_velocity(left, right, density_floor);
  const double drho = right.rho - left.rho;
  const double dq = right.q - left.q;

  if (vbar == 0.0) {
    // Degenerate Jacobian [[0,1],[0,0]]: both fluxes jump by dq only, so the
    // decomposition reduces to a plain split of the state jump.
    d.lambda = {0.0, 0.0};
    d.sigma = {drho, dq};
    d.evec = {{{1.0, 0.0}, {0.0, 1.0}}};
    return d;
  }

  const double root = std::sqrt(alpha + 1.0);
  const double lam1 = (alpha + 1.0 - root) / alpha * vbar;
  const double lam2 = (alpha + 1.0 + root) / alpha * vbar;
  const double pre = alpha / (2.0 * root);
  d.lambda = {lam1, lam2};
  d.sigma = {-pre * (dq / vbar - (alpha + 1.0 + root) / alpha * drho),
             pre * (dq / vbar - (alpha + 1.0 - root) / alpha * drho)};
  d.evec = {{{1.0, lam1}, {1.0, lam2}}};
  return d;
}

macro::FluxVector roe_flux(const macro::ConservedState& left,
                           const macro::ConservedState& right, double alpha,
                           double density_floor) {
  macro::ConservedState l = left;
  macro::ConservedState r = right;
  l.rho = std::max(l.rho, density_floor);
  r.rho = std::max(r.rho, density_floor);
  const auto fl = macro::flux(l, alpha);
  const auto fr = macro::flux(r, alpha);
  const auto d = roe_decomposition(l, r, alpha, density_floor);
  macro::FluxVector f;
  f.f1 = 0.5 * (fl.f1 + fr.f1);
  f.f2 = 0.5 * (fl.f2 + fr.f2);
  for (int k = 0; k < 2; ++k) {
    const double s = 0.5 * d.sigma[k] * std::fabs(d.lambda[k]);
    f.f1 -= s * d.evec[k][0];
    f.f2 -= s * d.evec[k][1];
  }
  return f;
}

double cfl_dt(const RoadField& field, const SolverConfig& cfg, const ModelParams& p) {
  if (field.cells.empty()) throw DomainError("cfl_dt: empty field");
  const double max_lambda = max_wave_speed(field, cfg, p);
  if (max_lambda == 0.0) return cfg.cfl * field.dx / p.v_0;
  return cfg.cfl * field.dx / max_lambda;
}

double viscous_dt(const RoadField& field, const SolverConfig& cfg, const ModelParams& p) {
  const double vac = cfg.resolved_vacuum_threshold();
  const std::size_t n = field.size();
  std::vector<double> mu(n);
  for (std::size_t i = 0; i < n; ++i)
    mu[i] = cell_viscosity(field.cells[i].rho, field.cells[i].velocity(cfg.density_floor), p, vac);

  double max_rate = 0.0;  // (mu_{i-1/2} + mu_{i+1/2}) / rho_i, a diffusion speed scale
  for (std::size_t i = 0; i < n; ++i) {
    if (field.cells[i].rho <= vac) continue;
    const double mu_left = 0.5 * (mu[i] + mu[(i + n - 1) % n]);
    const double mu_right = 0.5 * (mu[i] + mu[(i + 1) % n]);
    max_rate = std::max(max_rate, (mu_left + mu_right) / field.cells[i].rho);
  }
  if (max_rate == 0.0) return std::numeric_limits<double>::infinity();
  return 0.8 * field.dx * field.dx / max_rate;
}

macro::SourceVector source_discretization(const RoadField& field, std::size_t i,
                                          const ModelParams& p, const SolverConfig& cfg) {
  const double vac = cfg.resolved_vacuum_threshold();
  const auto& cell = field.cells[i];
  if (cell.rho <= vac) return {0.0, 0.0};

  const std::size_t n = field.size();
  const auto& left = field.cells[(i + n - 1) % n];
  const auto& right = field.cells[(i + 1) % n];
  const double v = cell.velocity(cfg.density_floor);
  const double v_left = left.velocity(cfg.density_floor);
  const double v_right = right.velocity(cfg.density_floor);

  const double u_opt = macro::optimal_velocity(std::max(cell.rho, cfg.density_floor), v, p);
  const double b = macro::anticipation_coefficient(cell.rho, v, p.alpha);
  const double v_x = (v_right - v_left) / (2.0 * field.dx);

  const double mu_c = cell_viscosity(cell.rho, v, p, vac);
  const double mu_left_half =
      left.rho <= vac ? 0.0 : 0.5 * (mu_c + cell_viscosity(left.rho, v_left, p, vac));
  const double mu_right_half =
      right.rho <= vac ? 0.0 : 0.5 * (mu_c + cell_viscosity(right.rho, v_right, p, vac));
  const double mu_vx_div =
      (mu_right_half * (v_right - v) - mu_left_half * (v - v_left)) / (field.dx * field.dx);

  return macro::source(cell, u_opt, b, mu_vx_div, v_x, p.tau, cfg.density_floor);
}

void step(RoadField& field, double dt, const ModelParams& p, const SolverConfig& cfg,
          RunStats* stats) {
  const std::size_t n = field.size();
  if (n == 0) throw DomainError("step: empty field");
  const double floor = cfg.density_floor;

  auto apply_density_floor = [&](RoadField& f) {
    double added = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double& rho = f.cells[i].rho;
      if (std::isnan(rho) || rho < -1e3 * floor)
        throw StepError("step: density left the admissible range", i,
                        std::numeric_limits<double>::quiet_NaN(), -1);
      if (rho < floor) {
        added += (floor - rho) * f.dx;
        rho = floor;
      }
    }
    return added;
  };

  // Interface fluxes; interface i sits between cells i and i+1 and is
  // evaluated once, so the update telescopes exactly on the periodic ring.
  std::vector<macro::FluxVector> fluxes(n);
  parallel_for(n, cfg.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      fluxes[i] = roe_flux(field.cells[i], field.cells[(i + 1) % n], p.alpha, floor);
  });

  // Positivity limiter: scale each interface flux by its donor cell's
  // available mass, so the conservative stage cannot drive a density below
  // the floor. The scaled flux is still single-valued per interface, so the
  // update keeps telescoping exactly.
  const double r = dt / field.dx;
  std::vector<double> theta(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& in = fluxes[(i + n - 1) % n];
    const auto& out = fluxes[i];
    double outgoing = 0.0;
    if (out.f1 > 0.0) outgoing += out.f1;
    if (in.f1 < 0.0) outgoing -= in.f1;
    if (outgoing <= 0.0) continue;
    const double available = (field.cells[i].rho - floor) / r;
    theta[i] = std::min(1.0, std::max(0.0, available / outgoing));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t donor = fluxes[i].f1 > 0.0 ? i : (i + 1) % n;
    if (theta[donor] < 1.0) {
      fluxes[i].f1 *= theta[donor];
      fluxes[i].f2 *= theta[donor];
    }
  }

  std::vector<double> source_n(n);
  parallel_for(n, cfg.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      source_n[i] = relaxation_source(field, i, p, cfg);
  });

  if (stats) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto ll = macro::eigenvalues(field.cells[i].velocity(floor), p.alpha);
      const auto lr = macro::eigenvalues(field.cells[(i + 1) % n].velocity(floor), p.alpha);
      for (int k = 0; k < 2; ++k)
        if (ll[k] < 0.0 && lr[k] > 0.0) ++stats->expansion_flags;
    }
  }

  RoadField star = field;
  parallel_for(n, cfg.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& in = fluxes[(i + n - 1) % n];
      const auto& out = fluxes[i];
      star.cells[i].rho = field.cells[i].rho - r * (out.f1 - in.f1);
      star.cells[i].q = field.cells[i].q - r * (out.f2 - in.f2);
    }
  });
  double floor_added = apply_density_floor(star);

  std::vector<double> source_star(n);
  parallel_for(n, cfg.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      source_star[i] = relaxation_source(star, i, p, cfg);
  });

  parallel_for(n, cfg.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      field.cells[i].rho = star.cells[i].rho;
      field.cells[i].q = star.cells[i].q + 0.5 * dt * (source_n[i] + source_star[i]);
    }
  });
  floor_added += apply_density_floor(field);

  for (std::size_t i = 0; i < n; ++i) {
    double& q = field.cells[i].q;
    if (std::isnan(q))
      throw StepError("step: flow is NaN", i, std::numeric_limits<double>::quiet_NaN(), -1);
    if (q < 0.0) q = 0.0;  // v >= 0 physical domain; no backward flow in vacuum
  }

  implicit_viscous_stage(field, dt, p, cfg);

  if (stats) stats->floor_mass_added += floor_added;
}

RunStats run(RoadField& field, const SolverConfig& cfg, const ModelParams& p,
             const std::function<void(double, const RoadField&)>& sink) {
  cfg.validate();
  p.validate();
  RunStats stats;

  double t = 0.0;
  double last_emit = -1.0;
  auto emit = [&](double at) {
    if (sink) sink(at, field);
    last_emit = at;
  };
  emit(0.0);

  double next_snapshot = cfg.snapshot_interval;
  constexpr double kTimeEps = 1e-9;
  while (t < cfg.t_end - kTimeEps) {
    const double max_lambda = max_wave_speed(field, cfg, p);
    const double dt_hyp =
        max_lambda > 0.0 ? cfg.cfl * field.dx / max_lambda : cfg.cfl * field.dx / p.v_0;
    double dt = std::min(dt_hyp, cfg.t_end - t);
    if (next_snapshot < cfg.t_end && t + dt > next_snapshot)
      dt = next_snapshot - t;  // land exactly on snapshot times
    if (!(dt > kTimeEps))
      throw StepError("run: time step collapsed", 0, t, stats.steps);

    try {
      step(field, dt, p, cfg, &stats);
    } catch (const StepError& e) {
      throw StepError(std::string(e.what()) + " (see time/step)", e.cell(), t, stats.steps);
    }
    t += dt;
    ++stats.steps;
    stats.max_courant = std::max(stats.max_courant, dt * max_lambda / field.dx);

    if (t >= next_snapshot - kTimeEps && t < cfg.t_end - kTimeEps) {
      emit(t);
      while (next_snapshot <= t + kTimeEps) next_snapshot += cfg.snapshot_interval;
    }
  }
  if (last_emit < cfg.t_end - kTimeEps) emit(cfg.t_end);
  return stats;
}

}  // namespace traffic::roe
