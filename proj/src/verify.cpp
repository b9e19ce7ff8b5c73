#include "invset/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "invset/dynamics.hpp"
#include "invset/knn.hpp"

namespace invset {

std::string_view to_string(ReferenceKind k) noexcept {
  switch (k) {
    case ReferenceKind::PointSingleton: return "point";
    case ReferenceKind::IntervalGrid: return "interval";
    case ReferenceKind::SegmentGrid: return "segment";
    case ReferenceKind::DiskSample: return "disk";
    case ReferenceKind::TrajectorySample: return "trajectory";
  }
  return "?";
}

ReferenceKind reference_kind_from_string(std::string_view s) {
  for (auto k : {ReferenceKind::PointSingleton, ReferenceKind::IntervalGrid, ReferenceKind::SegmentGrid,
                 ReferenceKind::DiskSample, ReferenceKind::TrajectorySample})
    if (s == to_string(k)) return k;
  throw std::invalid_argument("unknown reference kind '" + std::string(s) + "'");
}

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n < 2) throw std::invalid_argument("reference: grid needs at least 2 points");
  if (!(lo < hi)) throw std::invalid_argument("reference: grid needs lo < hi");
  std::vector<double> v(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + static_cast<double>(i) * step;
  v.back() = hi;
  return v;
}

PointCloud sunflower_disk(double radius, std::size_t n) {
  if (!(radius > 0.0)) throw std::invalid_argument("reference: disk radius must be positive");
  if (n < 1) throw std::invalid_argument("reference: disk sample needs at least 1 point");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<double> coords(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    const double r = radius * std::sqrt((static_cast<double>(k) + 0.5) / static_cast<double>(n));
    const double t = golden * static_cast<double>(k);
    coords[2 * k] = r * std::cos(t);
    coords[2 * k + 1] = r * std::sin(t);
  }
  return PointCloud(2, std::move(coords));
}

PointCloud trajectory(const ReferenceSpec& spec) {
  const MapSystem f = make_map(spec.map_name, spec.map_params);
  if (spec.samples < 1) throw std::invalid_argument("reference: trajectory needs samples >= 1");
  std::vector<double> x = spec.start.empty() ? std::vector<double>(f.dim, 0.0) : spec.start;
  if (x.size() != f.dim) throw std::invalid_argument("reference: trajectory start has wrong dimension");
  std::vector<double> next(f.dim);
  std::vector<double> coords;
  coords.reserve(spec.samples * f.dim);
  for (std::size_t t = 0; t < spec.transient + spec.samples; ++t) {
    f.eval_fn(x, next);
    x.swap(next);
    for (double v : x)
      if (!std::isfinite(v) || std::abs(v) > 1e6)
        throw std::invalid_argument("reference: trajectory of '" + spec.map_name + "' diverged");
    if (t >= spec.transient) coords.insert(coords.end(), x.begin(), x.end());
  }
  return PointCloud(f.dim, std::move(coords));
}

double max_nearest(const PointCloud& from, const NeighborTree& to) {
  double worst = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) worst = std::max(worst, to.nearest(from[i]).dist_sq);
  return std::sqrt(worst);
}

}  // namespace

ReferenceSet reference(const ReferenceSpec& spec) {
  switch (spec.kind) {
    case ReferenceKind::PointSingleton:
      return {spec.kind, PointCloud(spec.point.size(), spec.point), spec};
    case ReferenceKind::IntervalGrid:
      return {spec.kind, PointCloud(1, linspace(spec.lo, spec.hi, spec.count)), spec};
    case ReferenceKind::SegmentGrid: {
      const auto xs = linspace(spec.lo, spec.hi, spec.count);
      std::vector<double> coords(2 * xs.size(), 0.0);
      for (std::size_t i = 0; i < xs.size(); ++i) coords[2 * i] = xs[i];
      return {spec.kind, PointCloud(2, std::move(coords)), spec};
    }
    case ReferenceKind::DiskSample:
      return {spec.kind, sunflower_disk(spec.radius, spec.count), spec};
    case ReferenceKind::TrajectorySample:
      return {spec.kind, trajectory(spec), spec};
  }
  throw std::invalid_argument("reference: unknown kind");
}

QualityReport report_quality(const PointCloud& x, const ReferenceSet& ref) {
  if (x.dim() != ref.sample.dim())
    throw std::invalid_argument("report_quality: cloud dimension " + std::to_string(x.dim()) +
                                " but reference dimension " + std::to_string(ref.sample.dim()));
  const NeighborTree cloud_tree(x);
  const NeighborTree ref_tree(ref.sample);
  QualityReport q;
  q.d_forward = max_nearest(ref.sample, cloud_tree);
  q.d_backward = max_nearest(x, ref_tree);
  q.d_hausdorff = std::max(q.d_forward, q.d_backward);
  return q;
}

}  // namespace invset
