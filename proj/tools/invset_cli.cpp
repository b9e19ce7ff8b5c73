// Command-line front end: run experiments, plot clouds, verify against
// reference sets.
//
// Exit codes: 0 success, 2 configuration error, 1 runtime failure.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "invset/config.hpp"
#include "invset/io.hpp"
#include "invset/plot.hpp"
#include "invset/runner.hpp"
#include "invset/verify.hpp"

namespace {

constexpr int kRuntimeError = 1;
constexpr int kConfigError = 2;

int cmd_run(const std::string& config_path, const std::string& out_dir, std::optional<std::uint64_t> seed) {
  invset::ExperimentConfig cfg = invset::load_config(config_path);
  if (!out_dir.empty()) cfg.output = out_dir;
  if (seed) cfg.seed = *seed;
  const auto res = invset::run_experiment(cfg);
  std::printf("%s: %s after %zu iterations, value %.6e -> %.6e, |grad|_inf %.3e, %.2fs\n", cfg.name.c_str(),
              std::string(invset::to_string(res.optim.termination)).c_str(), res.optim.iterations, res.initial_value,
              res.optim.final_value, res.optim.final_grad_norm, res.seconds);
  if (res.delta) std::printf("  delta %.6g\n", *res.delta);
  if (res.quality)
    std::printf("  d_H %.6e  d_forward %.6e  d_backward %.6e\n", res.quality->d_hausdorff, res.quality->d_forward,
                res.quality->d_backward);
  std::printf("  output: %s\n", cfg.output.string().c_str());
  return 0;
}

int cmd_plot(const std::vector<std::string>& inputs, std::optional<double> delta, const std::string& proj,
             const std::string& reference, const std::string& out) {
  std::vector<invset::PointCloud> clouds;
  for (const auto& path : inputs) clouds.push_back(invset::read_cloud_csv(path));
  invset::PlotOptions opts;
  opts.delta = delta;
  opts.projection = invset::projection_from_string(proj);
  if (!reference.empty()) opts.reference = invset::reference(invset::parse_reference_arg(reference)).sample;
  invset::write_svg(out, clouds, opts);
  return 0;
}

int cmd_verify(const std::string& cloud_path, const std::string& reference) {
  const auto cloud = invset::read_cloud_csv(cloud_path);
  const auto ref = invset::reference(invset::parse_reference_arg(reference));
  const auto q = invset::report_quality(cloud, ref);
  std::printf("d_hausdorff,d_forward,d_backward\n%s,%s,%s\n", invset::format_double(q.d_hausdorff).c_str(),
              invset::format_double(q.d_forward).c_str(), invset::format_double(q.d_backward).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate invariant sets of maps by minimizing a point cloud's distance to its image"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "Run one experiment config");
  run->add_option("--config", config_path, "Experiment JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (overrides the config)");
  run->add_option("--seed", seed, "Seed (overrides the config)");

  std::vector<std::string> inputs;
  std::optional<double> delta;
  std::string proj = "xy", plot_ref, svg_out;
  auto* plot = app.add_subcommand("plot", "Render cloud CSV files as an SVG scatter plot");
  plot->add_option("--in", inputs, "Cloud CSV files")->required()->check(CLI::ExistingFile);
  plot->add_option("--delta", delta, "Draw circles of this radius around each point");
  plot->add_option("--proj", proj, "Axis pair for 3d clouds")->check(CLI::IsMember({"xy", "xz", "yz"}));
  plot->add_option("--reference", plot_ref, "Reference spec (inline JSON or file)");
  plot->add_option("--out", svg_out, "Output SVG")->required();

  std::string cloud_path, verify_ref;
  auto* verify = app.add_subcommand("verify", "Distances between a cloud and a reference set");
  verify->add_option("--cloud", cloud_path, "Cloud CSV")->required()->check(CLI::ExistingFile);
  verify->add_option("--reference", verify_ref, "Reference spec (inline JSON or file)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, seed);
    if (*plot) return cmd_plot(inputs, delta, proj, plot_ref, svg_out);
    if (*verify) return cmd_verify(cloud_path, verify_ref);
  } catch (const invset::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}
