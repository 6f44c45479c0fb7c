#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "traffic/macro.hpp"
#include "traffic/roe.hpp"
#include "traffic/scenario.hpp"

using namespace traffic;

namespace {

const ModelParams kDefault;
constexpr double kFloor = 2e-7;  // 1e-6 * rho_0

roe::RoadField small_field() {
  scenario::ScenarioConfig cfg;
  cfg.cells = 100;
  cfg.solver.density_floor = kFloor;
  return scenario::blockade_scenario(cfg);
}

}  // namespace

TEST_CASE("Roe average velocity") {
  // Frozen: rho_l=0.09, v_l=10 and rho_r=0.01, v_r=0 give vbar = 7.5
  // (sqrt-density weights 3:1).
  macro::ConservedState l{0.09, 0.9}, r{0.01, 0.0};
  CHECK(roe::roe_average_velocity(l, r, kFloor) ==
        doctest::Approx(7.5).epsilon(1e-14));

  // Both sides at the floor: arithmetic mean of the velocities.
  macro::ConservedState lf{kFloor, kFloor * 4.0}, rf{kFloor, kFloor * 2.0};
  CHECK(roe::roe_average_velocity(lf, rf, kFloor) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("decomposition satisfies the flux and state identities") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> rho_dist(1e-3, 0.2);
  std::uniform_real_distribution<double> v_dist(0.0, 30.0);

  for (int trial = 0; trial < 1000; ++trial) {
    const double rho_l = rho_dist(rng), rho_r = rho_dist(rng);
    macro::ConservedState l{rho_l, rho_l * v_dist(rng)}, r{rho_r, rho_r * v_dist(rng)};
    const auto d = roe::roe_decomposition(l, r, kDefault.alpha, kFloor);
    const auto fl = macro::flux(l, kDefault.alpha), fr = macro::flux(r, kDefault.alpha);

    double rf1 = 0, rf2 = 0, ru1 = 0, ru2 = 0;
    for (int k = 0; k < 2; ++k) {
      rf1 += d.sigma[k] * d.lambda[k] * d.evec[k][0];
      rf2 += d.sigma[k] * d.lambda[k] * d.evec[k][1];
      ru1 += d.sigma[k] * d.evec[k][0];
      ru2 += d.sigma[k] * d.evec[k][1];
    }
    const double fs = std::max({std::fabs(fr.f1 - fl.f1), std::fabs(fr.f2 - fl.f2), 1e-300});
    const double us = std::max({std::fabs(r.rho - l.rho), std::fabs(r.q - l.q), 1e-300});
    CHECK(std::hypot(rf1 - (fr.f1 - fl.f1), rf2 - (fr.f2 - fl.f2)) / fs < 1e-12);
    CHECK(std::hypot(ru1 - (r.rho - l.rho), ru2 - (r.q - l.q)) / us < 1e-12);
  }
}

TEST_CASE("interface flux is consistent and upwinds supersonic flow") {
  macro::ConservedState u{0.1, 2.0};
  const auto f = roe::roe_flux(u, u, kDefault.alpha, kFloor);
  const auto direct = macro::flux(u, kDefault.alpha);
  CHECK(f.f1 == direct.f1);
  CHECK(f.f2 == direct.f2);

  // Both eigenvalues positive (v well above the sound speed): the interface
  // flux is the left flux.
  macro::ConservedState l{0.1, 2.0}, r{0.05, 0.5};
  const auto fi = roe::roe_flux(l, r, kDefault.alpha, kFloor);
  const auto flx = macro::flux(l, kDefault.alpha);
  CHECK(fi.f1 == doctest::Approx(flx.f1).epsilon(1e-12));
  CHECK(fi.f2 == doctest::Approx(flx.f2).epsilon(1e-12));
}

TEST_CASE("time-step bounds") {
  auto field = small_field();
  roe::SolverConfig cfg;
  cfg.density_floor = kFloor;

  // Max eigenvalue over the initial field is Lambda_2 at the near-empty
  // cells, which sit on the equilibrium curve just below v_0.
  const double v_max = macro::equilibrium_speed(kFloor, kDefault);
  const double lam2 = macro::eigenvalues(v_max, kDefault.alpha)[1];
  CHECK(roe::cfl_dt(field, cfg, kDefault) ==
        doctest::Approx(0.9 * 200.0 / lam2).epsilon(1e-13));

  CHECK(roe::viscous_dt(field, cfg, kDefault) > 0.0);

  // Zero-velocity field falls back to v_0.
  roe::RoadField still;
  still.dx = 200.0;
  still.cells.assign(100, macro::ConservedState{0.1, 0.0});
  CHECK(roe::cfl_dt(still, cfg, kDefault) ==
        doctest::Approx(0.9 * 200.0 / 30.0).epsilon(1e-13));
}

TEST_CASE("a step conserves vehicles exactly up to the reported floor mass") {
  auto field = small_field();
  roe::SolverConfig cfg;
  cfg.density_floor = kFloor;
  const double before = field.total_vehicles();

  roe::RunStats stats;
  for (int i = 0; i < 50; ++i)
    roe::step(field, 0.05, kDefault, cfg, &stats);

  const double after = field.total_vehicles() - stats.floor_mass_added;
  CHECK(std::fabs(after - before) / before < 1e-10);
}

TEST_CASE("run is deterministic and thread-count independent") {
  scenario::ScenarioConfig cfg;
  cfg.cells = 100;
  cfg.solver.t_end = 20.0;
  cfg.solver.snapshot_interval = 10.0;
  cfg.solver.density_floor = kFloor;

  auto capture = [&](int threads) {
    auto field = scenario::blockade_scenario(cfg);
    roe::SolverConfig sc = cfg.solver;
    sc.threads = threads;
    std::string bytes;
    roe::run(field, sc, cfg.model, [&](double t, const roe::RoadField& f) {
      std::ostringstream os;
      scenario::write_snapshot(scenario::make_snapshot(t, f, sc.density_floor), os);
      bytes += os.str();
    });
    return bytes;
  };

  const std::string serial = capture(1);
  CHECK(serial == capture(4));
  CHECK(serial == capture(1));
}

TEST_CASE("run respects the CFL bound and hits snapshot times") {
  scenario::ScenarioConfig cfg;
  cfg.cells = 100;
  cfg.solver.t_end = 30.0;
  cfg.solver.snapshot_interval = 10.0;
  cfg.solver.density_floor = kFloor;

  auto field = scenario::blockade_scenario(cfg);
  std::vector<double> times;
  const auto stats = roe::run(field, cfg.solver, cfg.model,
                              [&](double t, const roe::RoadField&) { times.push_back(t); });
  CHECK(stats.max_courant <= 1.0 + 1e-12);
  REQUIRE(times.size() == 4);
  for (std::size_t i = 0; i < times.size(); ++i)
    CHECK(times[i] == doctest::Approx(10.0 * i).epsilon(1e-9));
}

TEST_CASE("solver config validation") {
  roe::SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.cfl = 1.5;
  CHECK_THROWS(cfg.validate());
  cfg.cfl = 0.9;
  cfg.t_end = -1.0;
  CHECK_THROWS(cfg.validate());
}
