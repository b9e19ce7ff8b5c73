#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "invset/geometry.hpp"

namespace invset {

/// 17 significant digits; parses back to the identical double.
std::string format_double(double v);

/// Header `x0,x1,...`, one point per row.
void write_cloud_csv(std::ostream& out, const PointCloud& cloud);
void write_cloud_csv(const std::filesystem::path& path, const PointCloud& cloud);

/// Throws std::runtime_error with the path and line on malformed input.
PointCloud read_cloud_csv(const std::filesystem::path& path);
PointCloud read_cloud_csv(std::istream& in, const std::string& source = "<stream>");

}  // namespace invset
