#include <benchmark/benchmark.h>

#include "traffic/kinetic.hpp"
#include "traffic/macro.hpp"
#include "traffic/roe.hpp"
#include "traffic/scenario.hpp"

using namespace traffic;

static void BM_RoeFlux(benchmark::State& state) {
  const ModelParams p;
  macro::ConservedState l{0.1, 2.0}, r{0.05, 0.6};
  for (auto _ : state)
    benchmark::DoNotOptimize(roe::roe_flux(l, r, p.alpha, 2e-7));
}
BENCHMARK(BM_RoeFlux);

static void BM_Viscosity(benchmark::State& state) {
  const ModelParams p;
  for (auto _ : state)
    benchmark::DoNotOptimize(kinetic::viscosity(0.1, 20.0, p));
}
BENCHMARK(BM_Viscosity);

static void BM_Step(benchmark::State& state) {
  scenario::ScenarioConfig cfg;
  cfg.cells = static_cast<int>(state.range(0));
  auto field = scenario::blockade_scenario(cfg);
  roe::SolverConfig sc = cfg.solver;
  for (auto _ : state)
    roe::step(field, 0.01, cfg.model, sc);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Step)->Arg(400)->Arg(1600);

static void BM_BlockadeRun(benchmark::State& state) {
  scenario::ScenarioConfig cfg;
  cfg.solver.t_end = 30.0;
  for (auto _ : state) {
    auto field = scenario::blockade_scenario(cfg);
    roe::run(field, cfg.solver, cfg.model, [](double, const roe::RoadField&) {});
    benchmark::DoNotOptimize(field);
  }
}
BENCHMARK(BM_BlockadeRun)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
