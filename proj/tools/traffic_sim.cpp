// traffic_sim: run the blockade-removal scenario, validate the numerical
// kernels, or render plots from an existing output directory.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "traffic/errors.hpp"
#include "traffic/plots.hpp"
#include "traffic/roe.hpp"
#include "traffic/scenario.hpp"
#include "traffic/validation.hpp"

namespace fs = std::filesystem;
using namespace traffic;

namespace {

constexpr int kOk = 0;
constexpr int kSuiteFailure = 1;
constexpr int kConfigError = 2;
constexpr int kSolverFailure = 3;

std::string snapshot_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "snapshot_%04d.csv", index);
  return buf;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int cells,
            double cfl, double t_end, double snapshot_every) {
  scenario::ScenarioConfig cfg;
  try {
    if (!config_path.empty()) cfg = scenario::load_config(config_path);
    if (cells > 0) cfg.cells = cells;
    if (cfl > 0.0) cfg.solver.cfl = cfl;
    if (t_end > 0.0) cfg.solver.t_end = t_end;
    if (snapshot_every > 0.0) cfg.solver.snapshot_interval = snapshot_every;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    cfg.validate();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  const fs::path out(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) {
    std::cerr << "config error: cannot create output directory " << out << "\n";
    return kConfigError;
  }

  {
    std::ofstream echo(out / "config.echo");
    scenario::echo_config(cfg, echo);
    if (!echo) {
      std::cerr << "config error: cannot write " << (out / "config.echo") << "\n";
      return kConfigError;
    }
  }

  roe::RoadField field = scenario::blockade_scenario(cfg);
  std::vector<scenario::Snapshot> snapshots;
  int snapshot_index = 0;

  try {
    roe::RunStats stats =
        roe::run(field, cfg.solver, cfg.model, [&](double t, const roe::RoadField& f) {
          scenario::Snapshot s =
              scenario::make_snapshot(t, f, cfg.solver.density_floor);
          std::ofstream os(out / snapshot_name(snapshot_index++));
          scenario::write_snapshot(s, os);
          if (!os) throw IoError("write failed: " + snapshot_name(snapshot_index - 1));
          snapshots.push_back(std::move(s));
        });
    std::cout << "steps=" << stats.steps << " max_courant=" << stats.max_courant
              << " floor_mass_added=" << stats.floor_mass_added
              << " snapshots=" << snapshots.size() << "\n";
  } catch (const StepError& e) {
    std::cerr << "solver failure at t=" << e.time() << " step=" << e.step()
              << " cell=" << e.cell() << ": " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::runtime_error& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  }
  return kOk;
}

int cmd_validate(const std::string& suite) {
  ModelParams p;
  std::vector<validation::SuiteResult> results;
  if (suite.empty() || suite == "all") {
    results = validation::run_all_suites(p);
  } else if (suite == "parameters") {
    results.push_back(validation::parameters_suite(p));
  } else if (suite == "orthonormality") {
    results.push_back(validation::orthonormality_suite(p));
  } else if (suite == "moments") {
    results.push_back(validation::moment_suite(p));
  } else if (suite == "ce_grad") {
    results.push_back(validation::ce_grad_suite(p));
  } else if (suite == "roe") {
    results.push_back(validation::roe_suite(p));
  } else {
    std::cerr << "config error: unknown suite '" << suite << "'\n";
    return kConfigError;
  }
  validation::write_report(results, std::cout);
  for (const auto& r : results)
    if (!r.passed) return kSuiteFailure;
  return kOk;
}

int cmd_plot(const std::string& in_dir, const std::string& out_dir) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(in_dir, ec)) {
    const auto& path = entry.path();
    if (path.extension() == ".csv" &&
        path.filename().string().rfind("snapshot_", 0) == 0)
      files.push_back(path);
  }
  if (ec) {
    std::cerr << "config error: cannot read " << in_dir << "\n";
    return kConfigError;
  }
  std::sort(files.begin(), files.end());

  std::vector<scenario::Snapshot> snapshots;
  for (const auto& path : files) {
    std::ifstream is(path);
    if (!is) {
      std::cerr << "config error: cannot open " << path << "\n";
      return kConfigError;
    }
    snapshots.push_back(scenario::read_snapshot(is));
  }

  ModelParams p;
  const fs::path echo = fs::path(in_dir) / "config.echo";
  if (fs::exists(echo)) {
    try {
      p = scenario::load_config(echo).model;
    } catch (const ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kConfigError;
    }
  }

  try {
    fs::create_directories(out_dir);
    plots::emit_plots(snapshots, p, out_dir);
  } catch (const IoError& e) {
    std::cerr << "plot failure: " << e.what() << "\n";
    return kSolverFailure;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"macroscopic traffic-flow simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", suite, in_dir;
  int cells = 0;
  double cfl = 0.0, t_end = 0.0, snapshot_every = 0.0;

  auto* run = app.add_subcommand("run", "integrate the blockade scenario");
  run->add_option("--config", config_path, "configuration file");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--cells", cells, "override cell count");
  run->add_option("--cfl", cfl, "override Courant number");
  run->add_option("--t-end", t_end, "override horizon [s]");
  run->add_option("--snapshot-every", snapshot_every, "override snapshot interval [s]");

  auto* validate = app.add_subcommand("validate", "run numerical validation suites");
  validate->add_option("--suite", suite, "parameters|orthonormality|moments|ce_grad|roe|all");

  std::string plot_in, plot_out = "plots";
  auto* plot = app.add_subcommand("plot", "render SVG plots from an output directory");
  plot->add_option("--in", plot_in, "simulation output directory")->required();
  plot->add_option("--out", plot_out, "plot output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (run->parsed()) return cmd_run(config_path, out_dir, cells, cfl, t_end, snapshot_every);
  if (validate->parsed()) return cmd_validate(suite);
  return cmd_plot(plot_in, plot_out);
}
