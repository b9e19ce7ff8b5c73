#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "invset/geometry.hpp"

namespace invset {

enum class ReferenceKind { PointSingleton, IntervalGrid, SegmentGrid, DiskSample, TrajectorySample };

std::string_view to_string(ReferenceKind k) noexcept;
ReferenceKind reference_kind_from_string(std::string_view s);

/// Parameters of a known (or simulated) invariant set. Only the fields of
/// the chosen kind are read.
struct ReferenceSpec {
  ReferenceKind kind = ReferenceKind::PointSingleton;
  /// PointSingleton
  std::vector<double> point{0.0};
  /// IntervalGrid: [lo, hi]. SegmentGrid: [lo, hi] x {0}.
  double lo = 0.0;
  double hi = 1.0;
  /// Sample size for grids and disks.
  std::size_t count = 10000;
  /// DiskSample: centered at the origin.
  double radius = 1.0;
  /// TrajectorySample
  std::string map_name = "henon";
  std::map<std::string, double> map_params;
  std::vector<double> start;
  std::size_t transient = 1000;
  std::size_t samples = 100000;
};

struct ReferenceSet {
  ReferenceKind kind;
  PointCloud sample;
  ReferenceSpec meta;
};

/// Throws std::invalid_argument for invalid parameters or a diverging
/// trajectory.
ReferenceSet reference(const ReferenceSpec& spec);

struct QualityReport {
  /// max(d_forward, d_backward)
  double d_hausdorff;
  /// Largest distance from a reference sample to the cloud.
  double d_forward;
  /// Largest distance from a cloud point to the reference sample.
  double d_backward;
};

QualityReport report_quality(const PointCloud& x, const ReferenceSet& ref);

}  // namespace invset
