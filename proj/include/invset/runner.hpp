#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <vector>

#include "invset/config.hpp"
#include "invset/geometry.hpp"
#include "invset/optimize.hpp"
#include "invset/verify.hpp"

namespace invset {

/// Volume of the unit ball in R^d.
double unit_ball_volume(std::size_t d);

/// Radius at which n balls have total volume vol(box).
double delta_init(const AxisBox& box, std::size_t n);

PointCloud initial_cloud(const ExperimentConfig& cfg);

struct RunResult {
  OptimRun optim;
  PointCloud initial_cloud;
  PointCloud final_cloud;
  double initial_value = 0.0;
  /// Final radius when the Lennard-Jones term is active.
  std::optional<double> delta{};
  std::optional<QualityReport> quality{};
  double seconds = 0.0;
  /// Files written, in write order.
  std::vector<std::filesystem::path> files{};
};

/// Runs one experiment. With write_files, creates cfg.output and writes
///   metrics.csv          iter,value,grad_inf,delta (one row per accepted step)
///   cloud_iter_NNNNN.csv snapshots every optim.snapshot_every steps
///   cloud_final.csv
///   quality.csv          when a reference is configured
///   manifest.json        config, seed, termination, timings
/// Previous cloud_*.csv files in the directory are removed first.
RunResult run_experiment(const ExperimentConfig& cfg, bool write_files = true);

}  // namespace invset
