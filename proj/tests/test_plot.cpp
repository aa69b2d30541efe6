#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <filesystem>
#include <fstream>
#include <string>

#include "belay/core.hpp"
#include "belay/harness.hpp"
#include "belay/plot.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
namespace plot = belay::plot;

namespace {

fs::path fresh_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / "belay_plot_tests" / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << content;
}

int count_occurrences(const std::string& haystack, const std::string& needle) {
  int n = 0;
  for (std::string::size_type pos = haystack.find(needle);
       pos != std::string::npos; pos = haystack.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

const std::string kHeader =
    "step,method,lr,w1_0,w1_1,w2_0,w2_1,f_w1,f_w2,grad_norm,diverged\n";

fs::path sample_csv(const std::string& leaf, const std::string& method) {
  const fs::path path = fresh_dir(leaf) / ("traj_" + method + ".csv");
  write_file(path,
             kHeader +
                 "1," + method + ",0.001,1,1,0.9,0.9,2,1.5,1,0\n" +
                 "2," + method + ",0.001,0.5,0.5,0.7,0.7,1,0.8,0.5,0\n" +
                 "3," + method + ",0.001,0.1,0.2,0.5,0.4,0.2,0.3,0.1,0\n");
  return path;
}

}  // namespace

TEST_CASE("read_trajectory_csv extracts method and w2 points") {
  const auto path = sample_csv("read", "adam");
  const auto traj = plot::read_trajectory_csv(path.string());
  CHECK(traj.method == "adam");
  REQUIRE(traj.points.size() == 3);
  CHECK(traj.points[0] == std::array<double, 2>{0.9, 0.9});
  CHECK(traj.points[2] == std::array<double, 2>{0.5, 0.4});
}

TEST_CASE("read_trajectory_csv drops non-finite points") {
  const fs::path path = fresh_dir("nonfinite") / "traj_sgd.csv";
  write_file(path, kHeader +
                       "1,sgd,0.1,1,1,0.9,0.9,2,1.5,1,0\n"
                       "2,sgd,0.1,inf,nan,inf,nan,inf,inf,inf,1\n");
  const auto traj = plot::read_trajectory_csv(path.string());
  CHECK(traj.points.size() == 1);
}

TEST_CASE("read_trajectory_csv errors") {
  CHECK_THROWS_AS((void)plot::read_trajectory_csv("/nonexistent/t.csv"),
                  belay::IoError);

  const fs::path empty = fresh_dir("empty") / "traj_sgd.csv";
  write_file(empty, kHeader);
  CHECK_THROWS_AS((void)plot::read_trajectory_csv(empty.string()),
                  belay::ConfigError);

  const fs::path bad = fresh_dir("badheader") / "traj_sgd.csv";
  write_file(bad, "a,b,c\n1,2,3\n");
  CHECK_THROWS_AS((void)plot::read_trajectory_csv(bad.string()),
                  belay::ConfigError);
}

TEST_CASE("svg contains one polyline per input inside traj groups") {
  plot::PlotSpec spec;
  spec.function = "quad_aniso";
  spec.resolution = 24;
  spec.inputs = {sample_csv("poly_a", "sgd").string(),
                 sample_csv("poly_b", "belay_adam").string()};

  const std::string svg = plot::render_svg_string(spec);
  CHECK(count_occurrences(svg, "<polyline") == 2);
  CHECK(count_occurrences(svg, "<g id=\"traj-sgd\"") == 1);
  CHECK(count_occurrences(svg, "<g id=\"traj-belay_adam\"") == 1);
  CHECK(count_occurrences(svg, "<g id=\"contours\"") == 1);
  CHECK(count_occurrences(svg, "<svg") == 1);
  // 24 x 24 contour cells.
  CHECK(count_occurrences(svg, "<rect") >= 24 * 24);
}

TEST_CASE("svg output is byte deterministic") {
  plot::PlotSpec spec;
  spec.function = "rosenbrock";
  spec.resolution = 32;
  spec.inputs = {sample_csv("det", "ema_adam").string()};
  CHECK(plot::render_svg_string(spec) == plot::render_svg_string(spec));
}

TEST_CASE("explicit window must be ordered") {
  plot::PlotSpec spec;
  spec.function = "quad_aniso";
  spec.inputs = {sample_csv("window", "sgd").string()};
  spec.window = std::array<double, 4>{2.0, -2.0, -2.0, 2.0};
  CHECK_THROWS_AS((void)plot::render_svg_string(spec), belay::ConfigError);
}

TEST_CASE("spec validation") {
  plot::PlotSpec spec;
  spec.function = "quad_aniso";
  CHECK_THROWS_AS((void)plot::render_svg_string(spec),
                  belay::ConfigError);  // no inputs

  spec.inputs = {sample_csv("res", "sgd").string()};
  spec.resolution = 1;
  CHECK_THROWS_AS((void)plot::render_svg_string(spec), belay::ConfigError);

  spec.resolution = 50;
  spec.function = "not_a_function";
  CHECK_THROWS_AS((void)plot::render_svg_string(spec), belay::ConfigError);
}

TEST_CASE("render_svg writes the file") {
  plot::PlotSpec spec;
  spec.function = "l1_aniso";
  spec.resolution = 16;
  spec.inputs = {sample_csv("file", "sgd").string()};
  spec.output = (fresh_dir("file_out") / "plot.svg").string();
  plot::render_svg(spec);
  CHECK(fs::exists(spec.output));
  CHECK(fs::file_size(spec.output) > 1000);
}

TEST_CASE("plot consumes real harness output") {
  const fs::path dir = fresh_dir("real");
  auto fn_cfg = belay::harness::ExperimentConfig{};
  fn_cfg.function = "quad_aniso";
  fn_cfg.methods = {{"sgd", belay::harness::default_method_config("sgd")},
                    {"belay_adam",
                     belay::harness::default_method_config("belay_adam")}};
  fn_cfg.start = {1.5, 1.5};
  fn_cfg.steps = 100;
  fn_cfg.output_dir = dir.string();
  (void)belay::harness::trajectory_compare(fn_cfg);

  plot::PlotSpec spec;
  spec.function = "quad_aniso";
  spec.resolution = 20;
  spec.inputs = {(dir / "traj_sgd.csv").string(),
                 (dir / "traj_belay_adam.csv").string()};
  const std::string svg = plot::render_svg_string(spec);
  CHECK(count_occurrences(svg, "<polyline") == 2);
  CHECK(count_occurrences(svg, "traj-belay_adam") == 1);
}
