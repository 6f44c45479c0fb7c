#include "traffic/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "traffic/errors.hpp"
#include "traffic/macro.hpp"

namespace traffic::scenario {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

enum class Dimension { Scalar, Length, Speed, Density, Time };

double parse_quantity(const std::string& raw, Dimension dim, const std::string& where) {
  const std::string text = trim(raw);
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str())
    throw ConfigError(where + ": expected a number, got '" + text + "'");
  const std::string unit = trim(text.substr(end - text.c_str()));

  switch (dim) {
    case Dimension::Scalar:
      if (!unit.empty()) throw ConfigError(where + ": unexpected unit '" + unit + "'");
      return value;
    case Dimension::Length:
      if (unit.empty() || unit == "m") return value;
      if (unit == "km") return value * 1000.0;
      break;
    case Dimension::Speed:
      if (unit.empty() || unit == "m/s") return value;
      if (unit == "km/h") return value / 3.6;
      break;
    case Dimension::Density:
      if (unit.empty() || unit == "veh/m") return value;
      if (unit == "veh/km") return value / 1000.0;
      break;
    case Dimension::Time:
      if (unit.empty() || unit == "s") return value;
      if (unit == "min") return value * 60.0;
      break;
  }
  throw ConfigError(where + ": unknown unit '" + unit + "'");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!(road_length > 0.0)) throw ConfigError("road.length must be > 0");
  if (cells < 1) throw ConfigError("road.cells must be >= 1");
  if (!(queue_start >= 0.0 && queue_start < queue_end && queue_end <= road_length))
    throw ConfigError("queue bounds must satisfy 0 <= queue.start < queue.end <= road.length");
  if (!(queue_density > 0.0 && queue_density <= model.rho_0))
    throw ConfigError("queue.density must be in (0, model.rho_0]");
  try {
    model.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  solver.validate();
}

ScenarioConfig parse_config(const std::string& text, const std::string& origin) {
  ScenarioConfig cfg;
  bool floor_set = false;

  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = origin + ":" + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(where + ": expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "road.length")
      cfg.road_length = parse_quantity(value, Dimension::Length, where);
    else if (key == "road.cells")
      cfg.cells = static_cast<int>(parse_quantity(value, Dimension::Scalar, where));
    else if (key == "queue.start")
      cfg.queue_start = parse_quantity(value, Dimension::Length, where);
    else if (key == "queue.end")
      cfg.queue_end = parse_quantity(value, Dimension::Length, where);
    else if (key == "queue.density")
      cfg.queue_density = parse_quantity(value, Dimension::Density, where);
    else if (key == "model.alpha")
      cfg.model.alpha = parse_quantity(value, Dimension::Scalar, where);
    else if (key == "model.tau")
      cfg.model.tau = parse_quantity(value, Dimension::Time, where);
    else if (key == "model.w_c")
      cfg.model.w_c = parse_quantity(value, Dimension::Scalar, where);
    else if (key == "model.rho_c")
      cfg.model.rho_c = parse_quantity(value, Dimension::Density, where);
    else if (key == "model.rho_0")
      cfg.model.rho_0 = parse_quantity(value, Dimension::Density, where);
    else if (key == "model.v_0")
      cfg.model.v_0 = parse_quantity(value, Dimension::Speed, where);
    else if (key == "model.a")
      cfg.model.a = parse_quantity(value, Dimension::Scalar, where);
    else if (key == "solver.cfl")
      cfg.solver.cfl = parse_quantity(value, Dimension::Scalar, where);
    else if (key == "solver.t_end")
      cfg.solver.t_end = parse_quantity(value, Dimension::Time, where);
    else if (key == "solver.snapshot_interval")
      cfg.solver.snapshot_interval = parse_quantity(value, Dimension::Time, where);
    else if (key == "solver.density_floor") {
      cfg.solver.density_floor = parse_quantity(value, Dimension::Density, where);
      floor_set = true;
    } else if (key == "solver.vacuum_threshold")
      cfg.solver.vacuum_threshold = parse_quantity(value, Dimension::Density, where);
    else if (key == "solver.threads")
      cfg.solver.threads = static_cast<int>(parse_quantity(value, Dimension::Scalar, where));
    else if (key == "output.dir")
      cfg.output_dir = value;
    else
      throw ConfigError(where + ": unknown key '" + key + "'");
  }

  if (!floor_set) cfg.solver.density_floor = 1e-6 * cfg.model.rho_0;
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config file: " + path.string());
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_config(buffer.str(), path.string());
}

void echo_config(const ScenarioConfig& cfg, std::ostream& os) {
  os << "road.length = " << format_double(cfg.road_length) << "\n"
     << "road.cells = " << cfg.cells << "\n"
     << "queue.start = " << format_double(cfg.queue_start) << "\n"
     << "queue.end = " << format_double(cfg.queue_end) << "\n"
     << "queue.density = " << format_double(cfg.queue_density) << "\n"
     << "model.alpha = " << format_double(cfg.model.alpha) << "\n"
     << "model.tau = " << format_double(cfg.model.tau) << "\n"
     << "model.w_c = " << format_double(cfg.model.w_c) << "\n"
     << "model.rho_c = " << format_double(cfg.model.rho_c) << "\n"
     << "model.rho_0 = " << format_double(cfg.model.rho_0) << "\n"
     << "model.v_0 = " << format_double(cfg.model.v_0) << "\n"
     << "model.a = " << format_double(cfg.model.a) << "\n"
     << "solver.cfl = " << format_double(cfg.solver.cfl) << "\n"
     << "solver.t_end = " << format_double(cfg.solver.t_end) << "\n"
     << "solver.snapshot_interval = " << format_double(cfg.solver.snapshot_interval) << "\n"
     << "solver.density_floor = " << format_double(cfg.solver.density_floor) << "\n"
     << "solver.vacuum_threshold = " << format_double(cfg.solver.resolved_vacuum_threshold())
     << "\n"
     << "solver.threads = " << cfg.solver.threads << "\n"
     << "output.dir = " << cfg.output_dir << "\n";
}

roe::RoadField blockade_scenario(const ScenarioConfig& cfg) {
  roe::RoadField field;
  field.dx = cfg.road_length / cfg.cells;
  field.cells.resize(cfg.cells);
  for (int i = 0; i < cfg.cells; ++i) {
    const double x = (i + 0.5) * field.dx;
    const bool in_queue = x > cfg.queue_start && x < cfg.queue_end;
    const double rho = in_queue ? cfg.queue_density : cfg.solver.density_floor;
    const double v = macro::equilibrium_speed(rho, cfg.model);
    field.cells[i] = {rho, rho * v};
  }
  return field;
}

Snapshot make_snapshot(double t, const roe::RoadField& field, double density_floor) {
  Snapshot s;
  s.t = t;
  const std::size_t n = field.size();
  s.x.resize(n);
  s.rho.resize(n);
  s.v.resize(n);
  s.q.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.x[i] = (i + 0.5) * field.dx;
    s.rho[i] = field.cells[i].rho;
    s.v[i] = field.cells[i].velocity(density_floor);
    s.q[i] = field.cells[i].q;
  }
  return s;
}

std::size_t write_snapshot(const Snapshot& snapshot, std::ostream& os) {
  std::string out = "t,x,rho,v,q\n";
  for (std::size_t i = 0; i < snapshot.x.size(); ++i) {
    out += format_double(snapshot.t);
    out += ',';
    out += format_double(snapshot.x[i]);
    out += ',';
    out += format_double(snapshot.rho[i]);
    out += ',';
    out += format_double(snapshot.v[i]);
    out += ',';
    out += format_double(snapshot.q[i]);
    out += '\n';
  }
  os << out;
  if (!os) throw IoError("write_snapshot: stream write failed");
  return out.size();
}

Snapshot read_snapshot(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || trim(line) != "t,x,rho,v,q")
    throw IoError("read_snapshot: missing 't,x,rho,v,q' header");
  Snapshot s;
  bool first = true;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty()) continue;
    double fields[5];
    const char* p = line.c_str();
    for (int k = 0; k < 5; ++k) {
      char* end = nullptr;
      fields[k] = std::strtod(p, &end);
      if (end == p) throw IoError("read_snapshot: malformed row '" + line + "'");
      p = end;
      if (k < 4) {
        if (*p != ',') throw IoError("read_snapshot: malformed row '" + line + "'");
        ++p;
      }
    }
    if (first) {
      s.t = fields[0];
      first = false;
    }
    s.x.push_back(fields[1]);
    s.rho.push_back(fields[2]);
    s.v.push_back(fields[3]);
    s.q.push_back(fields[4]);
  }
  return s;
}

}  // namespace traffic::scenario
