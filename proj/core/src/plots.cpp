#include "traffic/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "traffic/errors.hpp"
#include "traffic/kinetic.hpp"

namespace traffic::plots {

namespace {

constexpr int kMarginLeft = 70;
constexpr int kMarginBottom = 50;
constexpr int kMarginTop = 30;
constexpr int kMarginRight = 20;
constexpr int kPlotWidth = 800;
constexpr int kPlotHeight = 480;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// Dark blue -> cyan -> yellow ramp over u in [0, 1].
std::string heat_color(double u) {
  u = std::clamp(u, 0.0, 1.0);
  const int r = static_cast<int>(255.0 * std::clamp(2.0 * u - 1.0, 0.0, 1.0));
  const int g = static_cast<int>(255.0 * std::clamp(2.0 * u, 0.0, 1.0) * (0.2 + 0.8 * u));
  const int b = static_cast<int>(255.0 * std::clamp(1.0 - 1.5 * u, 0.0, 1.0));
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream os(path);
  if (!os) throw IoError("emit_plots: cannot open " + path.string());
  os << body;
  if (!os) throw IoError("emit_plots: write failed for " + path.string());
}

std::string svg_open(const std::string& title, const std::string& xlabel,
                     const std::string& ylabel) {
  const int w = kMarginLeft + kPlotWidth + kMarginRight;
  const int h = kMarginTop + kPlotHeight + kMarginBottom;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" font-family=\"sans-serif\" font-size=\"13\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kMarginLeft + kPlotWidth / 2 << "\" y=\"18\" text-anchor=\"middle\">"
     << title << "</text>\n"
     << "<text x=\"" << kMarginLeft + kPlotWidth / 2 << "\" y=\"" << h - 12
     << "\" text-anchor=\"middle\">" << xlabel << "</text>\n"
     << "<text x=\"16\" y=\"" << kMarginTop + kPlotHeight / 2
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << kMarginTop + kPlotHeight / 2 << ")\">" << ylabel << "</text>\n";
  return os.str();
}

void axis_ticks(std::ostringstream& os, double x_min, double x_max, double y_min,
                double y_max) {
  for (int i = 0; i <= 4; ++i) {
    const double fx = i / 4.0;
    const int px = kMarginLeft + static_cast<int>(fx * kPlotWidth);
    const int py = kMarginTop + kPlotHeight - static_cast<int>(fx * kPlotHeight);
    os << "<text x=\"" << px << "\" y=\"" << kMarginTop + kPlotHeight + 18
       << "\" text-anchor=\"middle\">" << fmt(x_min + fx * (x_max - x_min)) << "</text>\n"
       << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << py + 4
       << "\" text-anchor=\"end\">" << fmt(y_min + fx * (y_max - y_min)) << "</text>\n";
  }
  os << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << kPlotWidth
     << "\" height=\"" << kPlotHeight << "\" fill=\"none\" stroke=\"black\"/>\n";
}

void emit_heatmap(const std::vector<scenario::Snapshot>& snaps,
                  const std::vector<double> scenario::Snapshot::* series,
                  const std::string& title, const std::string& value_label,
                  const std::filesystem::path& path) {
  double v_max = 0.0;
  for (const auto& s : snaps)
    for (double v : s.*series) v_max = std::max(v_max, v);
  if (v_max == 0.0) v_max = 1.0;

  const double x_max = snaps.front().x.back() + snaps.front().x.front();
  const double t_max = std::max(snaps.back().t, 1e-300);
  const std::size_t rows = snaps.size();
  const std::size_t cols = snaps.front().x.size();
  const double cell_w = static_cast<double>(kPlotWidth) / cols;
  const double cell_h = static_cast<double>(kPlotHeight) / rows;

  std::ostringstream os;
  os << svg_open(title + " (max " + fmt(v_max) + " " + value_label + ")", "x [m]", "t [s]");
  for (std::size_t r = 0; r < rows; ++r) {
    const double y = kMarginTop + kPlotHeight - (r + 1) * cell_h;
    for (std::size_t c = 0; c < cols; ++c) {
      const double value = (snaps[r].*series)[c];
      os << "<rect x=\"" << fmt(kMarginLeft + c * cell_w) << "\" y=\"" << fmt(y)
         << "\" width=\"" << fmt(cell_w + 0.5) << "\" height=\"" << fmt(cell_h + 0.5)
         << "\" fill=\"" << heat_color(value / v_max) << "\"/>\n";
    }
  }
  axis_ticks(os, 0.0, x_max, 0.0, t_max);
  os << "</svg>\n";
  write_file(path, os.str());
}

void emit_aggressiveness_curve(const ModelParams& p, const std::filesystem::path& path) {
  const int samples = 512;
  std::ostringstream os;
  os << svg_open("driver aggressiveness w(rho)", "rho [veh/m]", "w");
  os << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  const double w_max = p.w_c * 1.05;
  for (int i = 0; i <= samples; ++i) {
    const double rho = p.rho_0 * i / samples;
    const double w = kinetic::aggressiveness(rho, p);
    const double px = kMarginLeft + static_cast<double>(i) / samples * kPlotWidth;
    const double py = kMarginTop + kPlotHeight - (w - 1.0) / (w_max - 1.0) * kPlotHeight;
    os << fmt(px) << "," << fmt(py) << " ";
  }
  os << "\"/>\n";
  axis_ticks(os, 0.0, p.rho_0, 1.0, w_max);
  os << "</svg>\n";
  write_file(path, os.str());
}

}  // namespace

void emit_plots(const std::vector<scenario::Snapshot>& snapshots, const ModelParams& p,
                const std::filesystem::path& out_dir) {
  if (snapshots.empty()) throw IoError("emit_plots: empty snapshot stream");
  std::filesystem::create_directories(out_dir);
  emit_heatmap(snapshots, &scenario::Snapshot::rho, "vehicle density rho(x, t)", "veh/m",
               out_dir / "density_spacetime.svg");
  emit_heatmap(snapshots, &scenario::Snapshot::q, "traffic flow q(x, t)", "veh/s",
               out_dir / "flow_spacetime.svg");
  emit_aggressiveness_curve(p, out_dir / "aggressiveness.svg");
}

}  // namespace traffic::plots
