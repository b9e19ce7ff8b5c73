#include "invset/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace invset {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw std::invalid_argument("PointCloud: dimension must be positive");
  if (coords_.empty()) throw std::invalid_argument("PointCloud: at least one point required");
  if (coords_.size() % dim_ != 0)
    throw std::invalid_argument("PointCloud: coordinate count " + std::to_string(coords_.size()) +
                                " is not a multiple of dimension " + std::to_string(dim_));
  for (double c : coords_)
    if (!std::isfinite(c)) throw std::invalid_argument("PointCloud: non-finite coordinate");
}

PointCloud PointCloud::from_points(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw std::invalid_argument("PointCloud: at least one point required");
  const std::size_t dim = points.front().size();
  std::vector<double> coords;
  coords.reserve(points.size() * dim);
  for (const auto& p : points) {
    if (p.size() != dim) throw std::invalid_argument("PointCloud: points of mixed dimension");
    coords.insert(coords.end(), p.begin(), p.end());
  }
  return PointCloud(dim, std::move(coords));
}

AxisBox::AxisBox(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size())
    throw std::invalid_argument("AxisBox: lower and upper must be nonempty and of equal length");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i]))
      throw std::invalid_argument("AxisBox: need finite lower < upper on axis " + std::to_string(i));
  }
}

AxisBox AxisBox::cube(std::size_t dim, double lo, double hi) {
  return AxisBox(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

double AxisBox::volume() const noexcept {
  double v = 1.0;
  for (std::size_t i = 0; i < lower_.size(); ++i) v *= upper_[i] - lower_[i];
  return v;
}

bool AxisBox::contains(std::span<const double> x) const noexcept {
  if (x.size() != lower_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
  return true;
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
}

double mean_min_sq(const PointCloud& from, const PointCloud& to) {
  double sum = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) sum += point_to_set_sq(from[i], to).first;
  return sum / static_cast<double>(from.size());
}

double max_min_sq(const PointCloud& from, const PointCloud& to) {
  double worst = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) worst = std::max(worst, point_to_set_sq(from[i], to).first);
  return worst;
}

}  // namespace

std::pair<double, std::size_t> point_to_set_sq(std::span<const double> y, const PointCloud& x) {
  require_same_dim(y.size(), x.dim(), "point_to_set_sq");
  double best = std::numeric_limits<double>::infinity();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = squared_distance(y, x[i]);
    if (d < best) {
      best = d;
      arg = i;
    }
  }
  return {best, arg};
}

double modified_hausdorff(const PointCloud& x, const PointCloud& y) {
  require_same_dim(x.dim(), y.dim(), "modified_hausdorff");
  return 0.5 * (mean_min_sq(x, y) + mean_min_sq(y, x));
}

double hausdorff_exact(const PointCloud& x, const PointCloud& y) {
  require_same_dim(x.dim(), y.dim(), "hausdorff_exact");
  return std::sqrt(std::max(max_min_sq(x, y), max_min_sq(y, x)));
}

}  // namespace invset
