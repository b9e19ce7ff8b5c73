#include "invset/knn.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace invset {

namespace {

// Lexicographic (distance, index): the order every query result follows.
bool closer(const Neighbor& a, const Neighbor& b) noexcept {
  return a.dist_sq < b.dist_sq || (a.dist_sq == b.dist_sq && a.index < b.index);
}

class KBest {
 public:
  explicit KBest(std::size_t k) : k_(k) { heap_.reserve(k); }

  bool full() const noexcept { return heap_.size() == k_; }
  double worst() const noexcept {
    return full() ? heap_.front().dist_sq : std::numeric_limits<double>::infinity();
  }

  void offer(std::size_t index, double dist_sq) {
    const Neighbor cand{index, dist_sq};
    if (!full()) {
      heap_.push_back(cand);
      std::push_heap(heap_.begin(), heap_.end(), closer);
    } else if (closer(cand, heap_.front())) {
      std::pop_heap(heap_.begin(), heap_.end(), closer);
      heap_.back() = cand;
      std::push_heap(heap_.begin(), heap_.end(), closer);
    }
  }

  std::vector<Neighbor> take() {
    std::sort_heap(heap_.begin(), heap_.end(), closer);
    return std::move(heap_);
  }

 private:
  std::size_t k_;
  std::vector<Neighbor> heap_;
};

class Best1 {
 public:
  bool full() const noexcept { return best_.dist_sq < std::numeric_limits<double>::infinity(); }
  double worst() const noexcept { return best_.dist_sq; }
  void offer(std::size_t index, double dist_sq) noexcept {
    if (closer({index, dist_sq}, best_)) best_ = {index, dist_sq};
  }
  Neighbor result() const noexcept { return best_; }

 private:
  Neighbor best_{std::numeric_limits<std::size_t>::max(), std::numeric_limits<double>::infinity()};
};

}  // namespace

NeighborTree::NeighborTree(PointCloud source) : source_(std::move(source)) {
  order_.resize(source_.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  nodes_.reserve(2 * (source_.size() / kLeafSize + 1));
  build(0, order_.size());
}

std::size_t NeighborTree::build(std::size_t begin, std::size_t end) {
  const std::size_t dim = source_.dim();
  const std::size_t id = nodes_.size();
  nodes_.push_back(Node{begin, end});
  bounds_.resize(bounds_.size() + 2 * dim);
  double* lo = bounds_.data() + id * 2 * dim;
  double* hi = lo + dim;
  std::fill(lo, lo + dim, std::numeric_limits<double>::infinity());
  std::fill(hi, hi + dim, -std::numeric_limits<double>::infinity());
  for (std::size_t i = begin; i < end; ++i) {
    const auto p = source_[order_[i]];
    for (std::size_t a = 0; a < dim; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
  }
  if (end - begin <= kLeafSize) return id;

  std::size_t axis = 0;
  double spread = -1.0;
  for (std::size_t a = 0; a < dim; ++a) {
    if (hi[a] - lo[a] > spread) {
      spread = hi[a] - lo[a];
      axis = a;
    }
  }
  // All points coincide: splitting cannot separate them.
  if (spread == 0.0) return id;

  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                   order_.begin() + static_cast<std::ptrdiff_t>(mid),
                   order_.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](std::size_t a, std::size_t b) {
                     const double ca = source_[a][axis];
                     const double cb = source_[b][axis];
                     return ca < cb || (ca == cb && a < b);
                   });
  const std::size_t left = build(begin, mid);
  const std::size_t right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  nodes_[id].leaf = false;
  return id;
}

double NeighborTree::box_dist_sq(std::size_t node, std::span<const double> y) const noexcept {
  const std::size_t dim = source_.dim();
  const double* lo = bounds_.data() + node * 2 * dim;
  const double* hi = lo + dim;
  double s = 0.0;
  for (std::size_t a = 0; a < dim; ++a) {
    double gap = 0.0;
    if (y[a] < lo[a])
      gap = lo[a] - y[a];
    else if (y[a] > hi[a])
      gap = y[a] - hi[a];
    s += gap * gap;
  }
  return s;
}

template <class Sink>
void NeighborTree::search(std::size_t node_id, std::span<const double> y, Sink& sink) const {
  const Node& node = nodes_[node_id];
  if (node.leaf) {
    for (std::size_t i = node.begin; i < node.end; ++i) {
      const std::size_t idx = order_[i];
      sink.offer(idx, squared_distance(y, source_[idx]));
    }
    return;
  }
  double dl = box_dist_sq(node.left, y);
  double dr = box_dist_sq(node.right, y);
  std::size_t first = node.left;
  std::size_t second = node.right;
  if (dr < dl) {
    std::swap(first, second);
    std::swap(dl, dr);
  }
  // A box at exactly the current worst distance may still hold a smaller index.
  if (!sink.full() || dl <= sink.worst()) search(first, y, sink);
  if (!sink.full() || dr <= sink.worst()) search(second, y, sink);
}

std::vector<Neighbor> NeighborTree::query(std::span<const double> y, std::size_t k) const {
  if (y.size() != source_.dim())
    throw std::invalid_argument("NeighborTree::query: dimension mismatch (" + std::to_string(y.size()) +
                                " vs " + std::to_string(source_.dim()) + ")");
  if (k < 1 || k > source_.size())
    throw std::invalid_argument("NeighborTree::query: k=" + std::to_string(k) + " outside [1, " +
                                std::to_string(source_.size()) + "]");
  KBest sink(k);
  search(0, y, sink);
  return sink.take();
}

Neighbor NeighborTree::nearest(std::span<const double> y) const {
  if (y.size() != source_.dim())
    throw std::invalid_argument("NeighborTree::nearest: dimension mismatch");
  Best1 sink;
  search(0, y, sink);
  return sink.result();
}

}  // namespace invset
