#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "traffic/params.hpp"
#include "traffic/roe.hpp"

namespace traffic::scenario {

/// Fully resolved simulation setup. Defaults reproduce the blockade-removal
/// scenario: a 20 km periodic road with a 5 km queue at rho* = 0.198 veh/m
/// between 2.5 km and 7.5 km, everything else at the density floor.
struct ScenarioConfig {
  double road_length = 20000.0;  ///< [m]
  int cells = 400;
  double queue_start = 2500.0;   ///< [m]
  double queue_end = 7500.0;     ///< [m]
  double queue_density = 0.198;  ///< rho* [veh/m]
  ModelParams model;
  roe::SolverConfig solver;
  std::string output_dir = "out";

  void validate() const;
};

/// Parses a flat dotted-key config file ("road.length = 20 km"). Missing keys
/// keep their defaults; an empty file yields the default scenario. Length,
/// speed, density and time values accept unit suffixes (km, m, km/h, m/s,
/// veh/km, veh/m, min, s) and are stored in SI. Throws ConfigError with the
/// offending line on parse errors and with the field name on invariant
/// violations.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Same parser over an in-memory string; `origin` labels error messages.
ScenarioConfig parse_config(const std::string& text, const std::string& origin = "<string>");

/// Writes the fully-resolved configuration as dotted keys; re-loading the
/// echo reproduces the same run.
void echo_config(const ScenarioConfig& cfg, std::ostream& os);

/// Initial field: rho* inside (queue_start, queue_end), the density floor
/// elsewhere, velocity on the equilibrium curve; cell values are sampled at
/// cell centers.
roe::RoadField blockade_scenario(const ScenarioConfig& cfg);

/// Timestamped per-cell (x, rho, v, q) arrays.
struct Snapshot {
  double t = 0.0;
  std::vector<double> x, rho, v, q;
};

Snapshot make_snapshot(double t, const roe::RoadField& field, double density_floor);

/// CSV with header `t,x,rho,v,q`, one row per cell ordered by x, full double
/// precision. Returns bytes written.
std::size_t write_snapshot(const Snapshot& snapshot, std::ostream& os);

/// Inverse of write_snapshot; bit-exact round trip.
Snapshot read_snapshot(std::istream& is);

}  // namespace traffic::scenario
