#pragma once

#include <filesystem>
#include <vector>

#include "traffic/params.hpp"
#include "traffic/scenario.hpp"

namespace traffic::plots {

/// Writes self-contained SVG files into out_dir:
///   density_spacetime.svg  - heatmap of rho(x, t)
///   flow_spacetime.svg     - heatmap of q(x, t)
///   aggressiveness.svg     - line plot of w(rho) over [0, rho_0]
/// Axes are labeled in SI units. Throws IoError on an empty snapshot stream
/// or write failure.
void emit_plots(const std::vector<scenario::Snapshot>& snapshots, const ModelParams& p,
                const std::filesystem::path& out_dir);

}  // namespace traffic::plots
