#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace belay::plot {

/// Points of one plotted trajectory (the averaged point w2), parsed from a
/// trajectory CSV. Non-finite points are dropped at parse time.
struct PlotTrajectory {
  std::string method;
  std::vector<std::array<double, 2>> points;
};

/// Parses one trajectory CSV written by the harness. Throws IoError when the
/// file cannot be read and ConfigError on a malformed header or when no data
/// rows follow the header.
PlotTrajectory read_trajectory_csv(const std::string& path);

struct PlotSpec {
  std::vector<std::string> inputs;  ///< trajectory CSV paths
  std::string function;             ///< objective drawn as the contour field
  int resolution = 200;             ///< contour cells per axis
  /// xmin, xmax, ymin, ymax; computed from the data when absent
  std::optional<std::array<double, 4>> window;
  std::string output;  ///< SVG file path
};

/// Renders a log-scaled contour field of the objective with one polyline per
/// input trajectory (group ids traj-<method>) and a legend. Byte output is a
/// pure function of the PlotSpec fields and the input files.
void render_svg(const PlotSpec& spec);

/// Same, returning the SVG document instead of writing it.
std::string render_svg_string(const PlotSpec& spec);

}  // namespace belay::plot
