#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "invset/geometry.hpp"

namespace invset {

struct Neighbor {
  std::size_t index;
  double dist_sq;
};

/// Immutable kd-tree over a snapshot of a point cloud.
///
/// Queries are exact: results equal a brute-force scan ordered by
/// (squared distance, index), so ties always resolve to the smaller index.
/// A built tree can be queried concurrently.
class NeighborTree {
 public:
  explicit NeighborTree(PointCloud source);

  const PointCloud& source() const noexcept { return source_; }

  /// The k nearest source points, ascending. Self-matches are not excluded.
  /// Throws std::invalid_argument unless 1 <= k <= n and y.size() == dim.
  std::vector<Neighbor> query(std::span<const double> y, std::size_t k) const;

  Neighbor nearest(std::span<const double> y) const;

 private:
  struct Node {
    std::size_t begin;
    std::size_t end;
    // Children are valid only for inner nodes.
    std::size_t left = 0;
    std::size_t right = 0;
    bool leaf = true;
  };

  std::size_t build(std::size_t begin, std::size_t end);
  double box_dist_sq(std::size_t node, std::span<const double> y) const noexcept;

  template <class Sink>
  void search(std::size_t node, std::span<const double> y, Sink& sink) const;

  static constexpr std::size_t kLeafSize = 8;

  PointCloud source_;
  std::vector<std::size_t> order_;
  std::vector<Node> nodes_;
  // Tight bounding box per node: 2*dim doubles, lower then upper.
  std::vector<double> bounds_;
};

}  // namespace invset
