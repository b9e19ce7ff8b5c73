#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace invset {

/// An ordered multiset of n points in R^d, stored row-major.
///
/// Indices are identities (assignments refer to them), but every set
/// distance below treats the cloud as an unordered multiset.
class PointCloud {
 public:
  /// Takes n*dim coordinates, point i at [i*dim, (i+1)*dim).
  /// Throws std::invalid_argument on dim == 0, an empty or ragged
  /// coordinate list, or any non-finite coordinate.
  PointCloud(std::size_t dim, std::vector<double> coords);

  static PointCloud from_points(const std::vector<std::vector<double>>& points);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / dim_; }

  std::span<const double> operator[](std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }

  const std::vector<double>& coords() const noexcept { return coords_; }

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

/// Axis-aligned box with lower[i] < upper[i] on every axis.
class AxisBox {
 public:
  AxisBox(std::vector<double> lower, std::vector<double> upper);

  /// [lo, hi]^dim
  static AxisBox cube(std::size_t dim, double lo, double hi);

  std::size_t dim() const noexcept { return lower_.size(); }
  const std::vector<double>& lower() const noexcept { return lower_; }
  const std::vector<double>& upper() const noexcept { return upper_; }
  double volume() const noexcept;
  bool contains(std::span<const double> x) const noexcept;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// min_i |y - x_i|^2 and the smallest index attaining it.
std::pair<double, std::size_t> point_to_set_sq(std::span<const double> y, const PointCloud& x);

/// 1/2 (mean_x min_y |x-y|^2 + mean_y min_x |y-x|^2), brute force.
double modified_hausdorff(const PointCloud& x, const PointCloud& y);

/// Classical (unsquared) Hausdorff distance, brute force.
double hausdorff_exact(const PointCloud& x, const PointCloud& y);

}  // namespace invset
