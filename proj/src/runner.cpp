#include "invset/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "invset/dynamics.hpp"
#include "invset/energy.hpp"
#include "invset/io.hpp"
#include "invset/sampling.hpp"

namespace invset {

namespace fs = std::filesystem;

double unit_ball_volume(std::size_t d) {
  const double half = 0.5 * static_cast<double>(d);
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

double delta_init(const AxisBox& box, std::size_t n) {
  if (n < 1) throw std::invalid_argument("delta_init: n must be >= 1");
  const std::size_t d = box.dim();
  const double per_ball = box.volume() / (static_cast<double>(n) * unit_ball_volume(d));
  if (d == 1) return per_ball;
  if (d == 2) return std::sqrt(per_ball);
  return std::pow(per_ball, 1.0 / static_cast<double>(d));
}

PointCloud initial_cloud(const ExperimentConfig& cfg) {
  switch (cfg.init.kind) {
    case InitKind::Uniform: return uniform_random(cfg.box, cfg.init.n, cfg.init.seed.value_or(cfg.seed));
    case InitKind::Grid: return grid(cfg.box, cfg.init.counts);
    case InitKind::Halton: return halton(cfg.box, cfg.init.n, cfg.init.skip);
  }
  throw std::invalid_argument("initial_cloud: unknown init kind");
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::string snapshot_name(std::size_t iter) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "cloud_iter_%05zu.csv", iter);
  return buf;
}

void clear_old_clouds(const fs::path& dir) {
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.starts_with("cloud_") && name.ends_with(".csv")) fs::remove(entry.path());
  }
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg, bool write_files) {
  const auto t0 = std::chrono::steady_clock::now();
  const MapSystem f = make_map(cfg.map_name, cfg.map_params);
  const PointCloud x0 = initial_cloud(cfg);
  const std::size_t d = x0.dim();

  std::optional<LJParams> lj;
  if (cfg.lj) {
    lj = LJParams{cfg.lj->p, cfg.lj->m, cfg.lj->mu, cfg.lj->delta.value_or(delta_init(cfg.box, x0.size()))};
    lj->validate(x0.size());
  }
  const CloudObjective objective(f, d, lj);

  std::vector<double> vars = x0.coords();
  if (lj) vars.push_back(lj->delta);

  std::vector<double> deltas;
  auto observe = [&](std::size_t, std::span<const double> x) {
    if (lj) deltas.push_back(x.back());
  };
  OptimRun optim = minimize(std::cref(objective), vars, cfg.optim, observe);

  const std::size_t extra = lj ? 1 : 0;
  auto cloud_of = [&](const std::vector<double>& v) {
    return PointCloud(d, std::vector<double>(v.begin(), v.end() - static_cast<std::ptrdiff_t>(extra)));
  };

  PointCloud final_cloud = cloud_of(optim.final_x);
  RunResult res{.optim = std::move(optim), .initial_cloud = x0, .final_cloud = std::move(final_cloud)};
  res.initial_value = res.optim.trace.front().value;
  if (lj) res.delta = res.optim.final_x.back();
  if (cfg.reference) res.quality = report_quality(res.final_cloud, reference(*cfg.reference));
  const auto t1 = std::chrono::steady_clock::now();
  res.seconds = std::chrono::duration<double>(t1 - t0).count();
  if (!write_files) return res;

  try {
    fs::create_directories(cfg.output);
    clear_old_clouds(cfg.output);
  } catch (const fs::filesystem_error& e) {
    throw std::runtime_error("cannot prepare output directory '" + cfg.output.string() + "': " + e.what());
  }

  std::string metrics = "iter,value,grad_inf,delta\n";
  for (std::size_t r = 0; r < res.optim.trace.size(); ++r) {
    const auto& rec = res.optim.trace[r];
    metrics += std::to_string(rec.iteration) + "," + format_double(rec.value) + "," + format_double(rec.grad_inf) +
               "," + (lj ? format_double(deltas[r]) : std::string()) + "\n";
  }
  res.files.push_back(cfg.output / "metrics.csv");
  write_text(res.files.back(), metrics);

  for (const auto& rec : res.optim.trace) {
    if (!rec.snapshot) continue;
    res.files.push_back(cfg.output / snapshot_name(rec.iteration));
    write_cloud_csv(res.files.back(), cloud_of(*rec.snapshot));
  }
  res.files.push_back(cfg.output / "cloud_final.csv");
  write_cloud_csv(res.files.back(), res.final_cloud);

  if (res.quality) {
    res.files.push_back(cfg.output / "quality.csv");
    write_text(res.files.back(), "d_hausdorff,d_forward,d_backward\n" + format_double(res.quality->d_hausdorff) + "," +
                                     format_double(res.quality->d_forward) + "," +
                                     format_double(res.quality->d_backward) + "\n");
  }

  nlohmann::json manifest{
      {"config", to_json(cfg)},
      {"seed", cfg.seed},
      {"termination", to_string(res.optim.termination)},
      {"iterations", res.optim.iterations},
      {"evaluations", res.optim.evaluations},
      {"initial_value", res.initial_value},
      {"final_value", res.optim.final_value},
      {"final_grad_inf", res.optim.final_grad_norm},
      {"timings", {{"total_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
                   {"solve_seconds", res.seconds}}},
  };
  if (res.delta) manifest["delta_final"] = *res.delta;
  if (res.quality)
    manifest["quality"] = {{"d_hausdorff", res.quality->d_hausdorff},
                           {"d_forward", res.quality->d_forward},
                           {"d_backward", res.quality->d_backward}};
  nlohmann::json files = nlohmann::json::array();
  for (const auto& p : res.files) files.push_back(p.filename().string());
  manifest["files"] = files;
  res.files.push_back(cfg.output / "manifest.json");
  write_text(res.files.back(), manifest.dump(2) + "\n");
  return res;
}

}  // namespace invset
