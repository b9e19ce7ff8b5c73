#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "invset/geometry.hpp"
#include "invset/optimize.hpp"
#include "invset/verify.hpp"

namespace invset {

/// Invalid experiment configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InitKind { Uniform, Grid, Halton };

struct InitSpec {
  InitKind kind = InitKind::Uniform;
  std::size_t n = 0;
  /// Grid only.
  std::vector<std::size_t> counts;
  /// Uniform only; falls back to the experiment seed.
  std::optional<std::uint64_t> seed;
  /// Halton only.
  std::size_t skip = 0;
};

struct LJConfig {
  int p = 1;
  std::size_t m = 6;
  double mu = 1.0;
  /// Initial radius; derived from the box and n when absent.
  std::optional<double> delta;
};

struct ExperimentConfig {
  std::string name;
  std::string map_name;
  std::map<std::string, double> map_params;
  AxisBox box = AxisBox::cube(1, -1.0, 1.0);
  InitSpec init;
  std::size_t n = 0;
  std::optional<LJConfig> lj;
  OptimOptions optim;
  std::optional<ReferenceSpec> reference;
  std::filesystem::path output = "out";
  std::uint64_t seed = 0;
};

/// Parses and validates a config document. Unknown keys are rejected.
/// Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

ReferenceSpec parse_reference(const nlohmann::json& doc);

/// Inline JSON when the text starts with '{', otherwise a path to a JSON file.
ReferenceSpec parse_reference_arg(const std::string& text);

nlohmann::json to_json(const ExperimentConfig& cfg);
nlohmann::json to_json(const ReferenceSpec& spec);

}  // namespace invset
