#include <cstdio>
#include <fstream>
#include <ostream>

#include "belay/core.hpp"
#include "belay/harness.hpp"

namespace belay::harness {
namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  return out;
}

/// Short, deterministic learning-rate tag for file names ("0.001", "0.15").
std::string lr_tag(double lr) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", lr);
  return buf;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const std::string& method,
                          double lr,
                          const std::vector<TrajectoryRecord>& records) {
  const std::size_t dim = records.empty() ? 2 : records.front().w1.size();
  out << "step,method,lr";
  for (std::size_t i = 0; i < dim; ++i) out << ",w1_" << i;
  for (std::size_t i = 0; i < dim; ++i) out << ",w2_" << i;
  out << ",f_w1,f_w2,grad_norm,diverged\n";

  const std::string lr_text = format_double(lr);
  for (const auto& rec : records) {
    out << rec.step << ',' << method << ',' << lr_text;
    for (std::size_t i = 0; i < dim; ++i) out << ',' << format_double(rec.w1[i]);
    for (std::size_t i = 0; i < dim; ++i) out << ',' << format_double(rec.w2[i]);
    out << ',' << format_double(rec.f_w1) << ',' << format_double(rec.f_w2)
        << ',' << format_double(rec.grad_norm) << ','
        << (rec.diverged ? '1' : '0') << '\n';
  }
}

void write_trajectory_csv(const std::string& path, const std::string& method,
                          double lr,
                          const std::vector<TrajectoryRecord>& records) {
  auto out = open_output(path);
  write_trajectory_csv(out, method, lr, records);
  if (!out) throw IoError("failed writing file: " + path);
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "method,lr,final_dist,steps_to_tol,diverged\n";
  for (const auto& cell : result.cells) {
    out << cell.method << ',' << format_double(cell.lr) << ','
        << format_double(cell.final_dist) << ','
        << (cell.steps_to_tol ? std::to_string(*cell.steps_to_tol)
                              : std::string("-1"))
        << ',' << (cell.diverged ? '1' : '0') << '\n';
  }
}

void write_sweep_csv(const std::string& path, const SweepResult& result) {
  auto out = open_output(path);
  write_sweep_csv(out, result);
  if (!out) throw IoError("failed writing file: " + path);
}

std::string trajectory_filename(const std::string& method) {
  return "traj_" + method + ".csv";
}

std::string trajectory_filename(const std::string& method, double lr) {
  return "traj_" + method + "_lr" + lr_tag(lr) + ".csv";
}

}  // namespace belay::harness
