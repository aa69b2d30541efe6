#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "belay/optim.hpp"
#include "belay/param_vector.hpp"
#include "belay/state.hpp"

namespace belay::harness {

/// One configured method: identifier plus its resolved knobs.
struct MethodSpec {
  std::string id;
  optim::MethodConfig config;

  friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

/// A full experiment description. load_config resolves every default, so a
/// loaded config is always complete.
struct ExperimentConfig {
  std::string function;
  std::vector<MethodSpec> methods;
  ParamVector start;
  std::int64_t steps = 2000;
  std::vector<double> lrs;  ///< sweep grid; empty outside sweeps
  std::uint64_t seed = 0;
  std::string output_dir = "out";

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

/// Method defaults; belay methods come up fully damped with k=1, m1=10, m2=20.
optim::MethodConfig default_method_config(const std::string& id);

/// Parses the line-oriented `key = value` format described in the README.
/// Unknown keys, unknown methods, duplicate keys, and malformed values are
/// ConfigErrors naming the offending line. Missing file is an IoError.
ExperimentConfig load_config(const std::string& path);

/// Writes a config that load_config reads back field-for-field identical.
void save_config(const ExperimentConfig& cfg, const std::string& path);

/// Serializes a double with enough digits to round-trip exactly.
std::string format_double(double x);

// =============================================================================
// Experiments
// =============================================================================

/// Runs every configured method on the configured function and start point,
/// writes <output_dir>/traj_<method>.csv per method, and returns the
/// trajectories in config order.
std::vector<std::pair<std::string, std::vector<TrajectoryRecord>>>
trajectory_compare(const ExperimentConfig& cfg);

struct SweepCell {
  std::string method;
  double lr = 0.0;
  double final_dist = 0.0;
  std::optional<std::int64_t> steps_to_tol;
  bool diverged = false;
};

struct SweepResult {
  std::vector<SweepCell> cells;  ///< method-major (method, lr) order
};

/// Distance below which the averaged point counts as converged.
inline constexpr double kStepsToTolRadius = 1e-2;

/// Runs methods x lrs (lr overriding each method's own rate), writes one
/// trajectory CSV per cell plus <output_dir>/sweep.csv, and returns the cells
/// in deterministic (method, lr) order. Cells may run concurrently on up to
/// `workers` threads; outputs do not depend on scheduling. Throws ConfigError
/// when cfg.lrs is empty.
SweepResult lr_sweep(const ExperimentConfig& cfg, int workers = 1);

// =============================================================================
// CSV
// =============================================================================

/// Header: step,method,lr,w1_0,w1_1,w2_0,w2_1,f_w1,f_w2,grad_norm,diverged
void write_trajectory_csv(std::ostream& out, const std::string& method,
                          double lr,
                          const std::vector<TrajectoryRecord>& records);
void write_trajectory_csv(const std::string& path, const std::string& method,
                          double lr,
                          const std::vector<TrajectoryRecord>& records);

/// Header: method,lr,final_dist,steps_to_tol,diverged
/// steps_to_tol serializes as -1 when the run never entered the ball.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_sweep_csv(const std::string& path, const SweepResult& result);

/// Trajectory file name for a plain run.
std::string trajectory_filename(const std::string& method);
/// Trajectory file name for a sweep cell.
std::string trajectory_filename(const std::string& method, double lr);

}  // namespace belay::harness
