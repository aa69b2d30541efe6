// Command line driver: run / sweep / validate / plot.
//
// Exit codes: 0 success, 2 configuration error (bad flags, bad config file,
// unknown names, empty inputs), 3 I/O error (unreadable or unwritable files).

#include <array>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "belay/core.hpp"
#include "belay/harness.hpp"
#include "belay/optim.hpp"
#include "belay/plot.hpp"
#include "belay/testbed.hpp"
#include "belay/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::int64_t steps = 0;
};

belay::harness::ExperimentConfig load_with_overrides(const CommonOpts& opts) {
  auto cfg = belay::harness::load_config(opts.config_path);
  if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
  if (opts.steps > 0) cfg.steps = opts.steps;
  return cfg;
}

int cmd_run(const CommonOpts& opts) {
  const auto cfg = load_with_overrides(opts);
  const auto fn = belay::testbed::make_test_function(cfg.function);
  const auto trajectories = belay::harness::trajectory_compare(cfg);

  std::printf("%-14s %14s %14s %10s\n", "method", "final_f_w2", "final_dist",
              "steps_tol");
  for (const auto& [method, records] : trajectories) {
    const auto& last = records.back();
    const double dist = belay::norm(last.w2 - fn.minimum);
    std::int64_t steps_tol = -1;
    for (const auto& rec : records) {
      if (belay::norm(rec.w2 - fn.minimum) <
          belay::harness::kStepsToTolRadius) {
        steps_tol = rec.step;
        break;
      }
    }
    std::printf("%-14s %14.6g %14.6g %10lld%s\n", method.c_str(), last.f_w2,
                dist, static_cast<long long>(steps_tol),
                last.diverged ? "  (diverged)" : "");
  }
  std::printf("wrote %zu trajectory files to %s\n", trajectories.size(),
              cfg.output_dir.c_str());
  return kExitOk;
}

int cmd_sweep(const CommonOpts& opts, int workers) {
  const auto cfg = load_with_overrides(opts);
  const auto result = belay::harness::lr_sweep(cfg, workers);

  std::printf("%-14s %10s %14s %10s %9s\n", "method", "lr", "final_dist",
              "steps_tol", "diverged");
  for (const auto& cell : result.cells) {
    std::printf("%-14s %10g %14.6g %10lld %9s\n", cell.method.c_str(), cell.lr,
                cell.final_dist,
                static_cast<long long>(cell.steps_to_tol.value_or(-1)),
                cell.diverged ? "yes" : "no");
  }
  std::printf("wrote %zu cells to %s/sweep.csv\n", result.cells.size(),
              cfg.output_dir.c_str());
  return kExitOk;
}

int run_suites(const std::vector<belay::validate::CheckResult>& results) {
  bool all_pass = true;
  for (const auto& r : results) {
    std::printf("%s %-34s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    all_pass = all_pass && r.pass;
  }
  std::printf("%zu checks, %s\n", results.size(),
              all_pass ? "all passed" : "FAILURES present");
  return all_pass ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-particle weight-averaging optimizer workbench"};
  app.require_subcommand(1);

  CommonOpts run_opts;
  auto* run = app.add_subcommand("run", "Run the configured methods and write trajectory CSVs");
  run->add_option("--config", run_opts.config_path, "Experiment config file")->required();
  run->add_option("--out", run_opts.out_dir, "Output directory override");
  run->add_option("--steps", run_opts.steps, "Step budget override");

  CommonOpts sweep_opts;
  int workers = 1;
  auto* sweep = app.add_subcommand("sweep", "Run a learning-rate sweep and write summary CSV");
  sweep->add_option("--config", sweep_opts.config_path, "Experiment config file")->required();
  sweep->add_option("--out", sweep_opts.out_dir, "Output directory override");
  sweep->add_option("--steps", sweep_opts.steps, "Step budget override");
  sweep->add_option("--workers", workers, "Concurrent sweep cells")
      ->check(CLI::Range(1, 256));

  bool suite_physics = false;
  bool suite_ema = false;
  bool suite_momentum = false;
  auto* validate = app.add_subcommand("validate", "Run invariant suites");
  validate->add_flag("--physics", suite_physics, "Integrator and schedule properties");
  validate->add_flag("--ema-limit", suite_ema, "m1 -> infinity EMA equivalence");
  validate->add_flag("--momentum-linear", suite_momentum, "Momentum unrolling on linear losses");

  belay::plot::PlotSpec plot_spec;
  std::vector<double> window_values;
  auto* plot = app.add_subcommand("plot", "Render trajectories over the objective as SVG");
  plot->add_option("--function", plot_spec.function, "Objective for the contour field")->required();
  plot->add_option("--out", plot_spec.output, "Output SVG path")->required();
  plot->add_option("--resolution", plot_spec.resolution, "Contour cells per axis");
  plot->add_option("--window", window_values, "xmin,xmax,ymin,ymax")->delimiter(',')->expected(4);
  plot->add_option("inputs", plot_spec.inputs, "Trajectory CSV files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(run_opts);
    if (sweep->parsed()) return cmd_sweep(sweep_opts, workers);
    if (validate->parsed()) {
      const bool all = !suite_physics && !suite_ema && !suite_momentum;
      std::vector<belay::validate::CheckResult> results;
      if (suite_physics || all) {
        auto r = belay::validate::physics_suite();
        results.insert(results.end(), r.begin(), r.end());
      }
      if (suite_ema || all) {
        auto r = belay::validate::ema_limit_suite();
        results.insert(results.end(), r.begin(), r.end());
      }
      if (suite_momentum || all) {
        auto r = belay::validate::momentum_linear_suite();
        results.insert(results.end(), r.begin(), r.end());
      }
      return run_suites(results);
    }
    if (plot->parsed()) {
      if (window_values.size() == 4) {
        plot_spec.window = std::array<double, 4>{window_values[0], window_values[1],
                                                 window_values[2], window_values[3]};
      }
      belay::plot::render_svg(plot_spec);
      std::printf("wrote %s\n", plot_spec.output.c_str());
      return kExitOk;
    }
  } catch (const belay::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const belay::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}
