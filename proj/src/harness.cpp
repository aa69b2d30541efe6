#include <algorithm>
#include <atomic>
#include <filesystem>
#include <thread>

#include "belay/core.hpp"
#include "belay/harness.hpp"
#include "belay/testbed.hpp"

namespace belay::harness {
namespace {

void ensure_output_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory: " + dir);
}

}  // namespace

std::vector<std::pair<std::string, std::vector<TrajectoryRecord>>>
trajectory_compare(const ExperimentConfig& cfg) {
  if (cfg.methods.empty()) throw ConfigError("no methods configured");
  const testbed::TestFunction fn = testbed::make_test_function(cfg.function);
  ensure_output_dir(cfg.output_dir);

  std::vector<std::pair<std::string, std::vector<TrajectoryRecord>>> out;
  out.reserve(cfg.methods.size());
  for (const auto& spec : cfg.methods) {
    auto records = optim::run_optimizer(spec.id, fn.objective, cfg.start,
                                        cfg.steps, spec.config);
    const auto path = std::filesystem::path(cfg.output_dir) /
                      trajectory_filename(spec.id);
    write_trajectory_csv(path.string(), spec.id, spec.config.lr, records);
    out.emplace_back(spec.id, std::move(records));
  }
  return out;
}

SweepResult lr_sweep(const ExperimentConfig& cfg, int workers) {
  if (cfg.methods.empty()) throw ConfigError("no methods configured");
  if (cfg.lrs.empty()) throw ConfigError("lr sweep requires a non-empty lrs list");
  const testbed::TestFunction fn = testbed::make_test_function(cfg.function);
  ensure_output_dir(cfg.output_dir);

  struct Cell {
    const MethodSpec* spec;
    double lr;
    std::vector<TrajectoryRecord> records;
  };
  std::vector<Cell> cells;
  for (const auto& spec : cfg.methods) {
    for (const double lr : cfg.lrs) {
      cells.push_back({&spec, lr, {}});
    }
  }

  const auto run_cell = [&](Cell& cell) {
    optim::MethodConfig config = cell.spec->config;
    config.lr = cell.lr;
    cell.records = optim::run_optimizer(cell.spec->id, fn.objective, cfg.start,
                                        cfg.steps, config);
  };

  if (workers <= 1 || cells.size() <= 1) {
    for (auto& cell : cells) run_cell(cell);
  } else {
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells.size()) return;
        run_cell(cells[i]);
      }
    };
    const std::size_t thread_count =
        std::min<std::size_t>(static_cast<std::size_t>(workers), cells.size());
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (std::size_t i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  SweepResult result;
  result.cells.reserve(cells.size());
  for (const auto& cell : cells) {
    SweepCell row;
    row.method = cell.spec->id;
    row.lr = cell.lr;
    row.diverged = !cell.records.empty() && cell.records.back().diverged;
    row.final_dist = cell.records.empty()
                         ? norm(cfg.start - fn.minimum)
                         : norm(cell.records.back().w2 - fn.minimum);
    for (const auto& rec : cell.records) {
      if (norm(rec.w2 - fn.minimum) < kStepsToTolRadius) {
        row.steps_to_tol = rec.step;
        break;
      }
    }
    const auto path = std::filesystem::path(cfg.output_dir) /
                      trajectory_filename(cell.spec->id, cell.lr);
    write_trajectory_csv(path.string(), cell.spec->id, cell.lr, cell.records);
    result.cells.push_back(std::move(row));
  }

  const auto sweep_path = std::filesystem::path(cfg.output_dir) / "sweep.csv";
  write_sweep_csv(sweep_path.string(), result);
  return result;
}

}  // namespace belay::harness
