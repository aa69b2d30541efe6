#include "belay/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "belay/core.hpp"
#include "belay/testbed.hpp"

namespace belay::plot {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

/// Pixel coordinate with two decimals; enough for crisp lines, stable bytes.
std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string hex_color(int r, int g, int b) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

/// Dark-blue to yellow ramp for the log-objective field.
std::string heat_color(double t) {
  static constexpr std::array<std::array<int, 3>, 5> stops{{
      {{13, 8, 65}},      // deep indigo
      {{84, 39, 143}},    // violet
      {{187, 55, 84}},    // crimson
      {{243, 144, 63}},   // orange
      {{252, 255, 164}},  // pale yellow
  }};
  t = std::clamp(t, 0.0, 1.0);
  const double scaled = t * (stops.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(scaled);
  const std::size_t hi = std::min(lo + 1, stops.size() - 1);
  const double frac = scaled - static_cast<double>(lo);
  const auto mix = [&](int i) {
    return static_cast<int>(std::lround(stops[lo][i] +
                                        frac * (stops[hi][i] - stops[lo][i])));
  };
  return hex_color(mix(0), mix(1), mix(2));
}

/// Line colors assigned to trajectories in input order.
const std::array<const char*, 8> kPalette{
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

constexpr double kPlotSize = 600.0;
constexpr double kMargin = 10.0;
constexpr double kLegendWidth = 170.0;

}  // namespace

PlotTrajectory read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trajectory file: " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw ConfigError("empty trajectory file: " + path);
  }
  const auto header = split_csv_line(line);
  if (header.size() < 4 || header[0] != "step" || header[1] != "method" ||
      header[2] != "lr") {
    throw ConfigError("unrecognized trajectory header in " + path);
  }
  // Columns w1_0..w1_{d-1}, w2_0..w2_{d-1} follow the lr column.
  std::size_t dim = 0;
  while (3 + dim < header.size() &&
         header[3 + dim] == "w1_" + std::to_string(dim)) {
    ++dim;
  }
  if (dim == 0 || header.size() < 3 + 2 * dim + 4) {
    throw ConfigError("unrecognized trajectory header in " + path);
  }
  const std::size_t w2_col = 3 + dim;

  PlotTrajectory traj;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() < w2_col + 2) {
      throw ConfigError("short row in trajectory file: " + path);
    }
    if (traj.method.empty()) traj.method = fields[1];
    const double x = std::strtod(fields[w2_col].c_str(), nullptr);
    const double y = std::strtod(fields[w2_col + 1].c_str(), nullptr);
    if (std::isfinite(x) && std::isfinite(y)) {
      traj.points.push_back({x, y});
    }
  }
  if (traj.method.empty()) {
    throw ConfigError("trajectory file has no data rows: " + path);
  }
  return traj;
}

std::string render_svg_string(const PlotSpec& spec) {
  if (spec.inputs.empty()) throw ConfigError("plot needs at least one trajectory file");
  if (spec.resolution < 2 || spec.resolution > 2000) {
    throw ConfigError("plot resolution must lie in [2, 2000]");
  }
  const testbed::TestFunction fn = testbed::make_test_function(spec.function);

  std::vector<PlotTrajectory> trajectories;
  trajectories.reserve(spec.inputs.size());
  for (const auto& path : spec.inputs) {
    trajectories.push_back(read_trajectory_csv(path));
  }

  double xmin, xmax, ymin, ymax;
  if (spec.window) {
    xmin = (*spec.window)[0];
    xmax = (*spec.window)[1];
    ymin = (*spec.window)[2];
    ymax = (*spec.window)[3];
    if (!(xmin < xmax && ymin < ymax)) {
      throw ConfigError("plot window must satisfy xmin < xmax and ymin < ymax");
    }
  } else {
    xmin = ymin = std::numeric_limits<double>::infinity();
    xmax = ymax = -std::numeric_limits<double>::infinity();
    for (const auto& traj : trajectories) {
      for (const auto& p : traj.points) {
        xmin = std::min(xmin, p[0]);
        xmax = std::max(xmax, p[0]);
        ymin = std::min(ymin, p[1]);
        ymax = std::max(ymax, p[1]);
      }
    }
    if (!(xmin <= xmax)) {  // no finite points anywhere
      xmin = ymin = -1.0;
      xmax = ymax = 1.0;
    }
    const double spanx = xmax - xmin;
    const double spany = ymax - ymin;
    const double padx = spanx > 0.0 ? 0.1 * spanx : 1.0;
    const double pady = spany > 0.0 ? 0.1 * spany : 1.0;
    xmin -= padx;
    xmax += padx;
    ymin -= pady;
    ymax += pady;
  }

  const auto to_px = [&](double x, double y) -> std::array<double, 2> {
    const double sx = kMargin + (x - xmin) / (xmax - xmin) * kPlotSize;
    const double sy = kMargin + (ymax - y) / (ymax - ymin) * kPlotSize;
    return {sx, sy};
  };

  // Log-scaled field values at cell centers.
  const int res = spec.resolution;
  std::vector<double> field(static_cast<std::size_t>(res) * res);
  double fmin = std::numeric_limits<double>::infinity();
  double fmax = -std::numeric_limits<double>::infinity();
  for (int iy = 0; iy < res; ++iy) {
    for (int ix = 0; ix < res; ++ix) {
      const double cx = xmin + (ix + 0.5) * (xmax - xmin) / res;
      const double cy = ymin + (iy + 0.5) * (ymax - ymin) / res;
      const double value = fn.objective.value(ParamVector{cx, cy});
      const double logv = std::log10(value + 1e-12);
      field[static_cast<std::size_t>(iy) * res + ix] = logv;
      if (std::isfinite(logv)) {
        fmin = std::min(fmin, logv);
        fmax = std::max(fmax, logv);
      }
    }
  }
  if (!(fmin < fmax)) {
    fmin = 0.0;
    fmax = 1.0;
  }

  const double width = kMargin * 2 + kPlotSize + kLegendWidth;
  const double height = kMargin * 2 + kPlotSize;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";

  // Contour field: one rect per cell, slightly oversized to avoid seams.
  svg << "<g id=\"contours\">\n";
  const double cell = kPlotSize / res;
  for (int iy = 0; iy < res; ++iy) {
    for (int ix = 0; ix < res; ++ix) {
      const double logv = field[static_cast<std::size_t>(iy) * res + ix];
      const double t = (logv - fmin) / (fmax - fmin);
      const double x = kMargin + ix * cell;
      // row iy=0 is the bottom of the window; SVG y grows downward
      const double y = kMargin + kPlotSize - (iy + 1) * cell;
      svg << "<rect x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\""
          << px(cell + 0.5) << "\" height=\"" << px(cell + 0.5)
          << "\" fill=\"" << heat_color(t) << "\"/>\n";
    }
  }
  svg << "</g>\n";

  // Trajectories: one polyline per input file.
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const auto& traj = trajectories[i];
    const char* color = kPalette[i % kPalette.size()];
    svg << "<g id=\"traj-" << traj.method << "\">\n";
    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t j = 0; j < traj.points.size(); ++j) {
      const auto p = to_px(traj.points[j][0], traj.points[j][1]);
      if (j != 0) svg << ' ';
      svg << px(p[0]) << ',' << px(p[1]);
    }
    svg << "\"/>\n";
    svg << "</g>\n";
  }

  // Legend.
  const double lx = kMargin + kPlotSize + 20.0;
  svg << "<g id=\"legend\" font-family=\"monospace\" font-size=\"13\">\n";
  svg << "<text x=\"" << px(lx) << "\" y=\"" << px(kMargin + 16.0)
      << "\">" << spec.function << "</text>\n";
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    const double ly = kMargin + 40.0 + 22.0 * static_cast<double>(i);
    const char* color = kPalette[i % kPalette.size()];
    svg << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly - 4.0) << "\" x2=\""
        << px(lx + 24.0) << "\" y2=\"" << px(ly - 4.0) << "\" stroke=\""
        << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << px(lx + 32.0) << "\" y=\"" << px(ly) << "\">"
        << trajectories[i].method << "</text>\n";
  }
  svg << "</g>\n";
  svg << "</svg>\n";
  return svg.str();
}

void render_svg(const PlotSpec& spec) {
  const std::string doc = render_svg_string(spec);
  std::ofstream out(spec.output, std::ios::binary);
  if (!out) throw IoError("cannot write SVG file: " + spec.output);
  out << doc;
  if (!out) throw IoError("failed writing SVG file: " + spec.output);
}

}  // namespace belay::plot
