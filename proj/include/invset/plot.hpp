#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invset/geometry.hpp"

namespace invset {

enum class Projection { XY, XZ, YZ };

Projection projection_from_string(std::string_view s);

struct PlotOptions {
  /// Draw a circle of this radius around every point.
  std::optional<double> delta;
  /// Axis pair for 3d clouds.
  Projection projection = Projection::XY;
  /// Drawn underneath the clouds in light gray.
  std::optional<PointCloud> reference;
  int width = 640;
  int height = 640;
};

/// SVG 1.1 scatter plot. Every cloud point becomes one element with
/// class "marker"; delta circles have class "ball", reference points
/// class "ref". 1d clouds are drawn one row per cloud, in order.
/// Output is byte-identical for identical input.
///
/// Throws std::invalid_argument for an empty cloud list, mixed dimensions,
/// or a dimension outside 1..3.
std::string render_svg(const std::vector<PointCloud>& clouds, const PlotOptions& opts);

void write_svg(const std::filesystem::path& path, const std::vector<PointCloud>& clouds, const PlotOptions& opts);

}  // namespace invset
