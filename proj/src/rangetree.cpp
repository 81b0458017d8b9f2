#include "qmitm/rangetree.hpp"

#include <algorithm>
#include <stdexcept>

namespace qmitm {

// One layer per axis. Non-base layers hold an implicit segment tree over the
// points sorted by the current axis; each segment node owns a layer for the
// next axis over its canonical point set. The base (last axis) layer is a
// sorted array with a prefix-minimum payload table.
struct RangeTree::Layer {
  std::vector<int64_t> keys;  // current-axis coordinates, sorted (tie: payload)
  bool base = false;

  // base layer: point index of the payload-minimal point among the first
  // i+1 keys
  std::vector<uint32_t> prefix_best;

  // non-base layer: segment-tree nodes, heap-indexed from 1
  std::vector<std::unique_ptr<Layer>> assoc;
};

RangeTree::RangeTree(RangeTree&& other) noexcept
    : dim_(other.dim_),
      points_(std::move(other.points_)),
      root_(std::move(other.root_)),
      visits_(other.visits_.load(std::memory_order_relaxed)) {}

RangeTree& RangeTree::operator=(RangeTree&& other) noexcept {
  dim_ = other.dim_;
  points_ = std::move(other.points_);
  root_ = std::move(other.root_);
  visits_.store(other.visits_.load(std::memory_order_relaxed), std::memory_order_relaxed);
  return *this;
}

RangeTree::RangeTree() = default;
RangeTree::~RangeTree() = default;

RangeTree RangeTree::build(std::vector<RangePoint> points, int dimension) {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  for (const auto& p : points)
    if (static_cast<int>(p.coords.size()) != dimension)
      throw std::invalid_argument("point dimension mismatch");
  RangeTree t;
  t.dim_ = dimension;
  t.points_ = std::move(points);
  if (!t.points_.empty()) {
    std::vector<uint32_t> idx(t.points_.size());
    for (uint32_t i = 0; i < idx.size(); ++i) idx[i] = i;
    t.root_ = t.build_layer(std::move(idx), 0);
  }
  return t;
}

std::unique_ptr<RangeTree::Layer> RangeTree::build_layer(std::vector<uint32_t> idx,
                                                         int axis) const {
  auto layer = std::make_unique<Layer>();
  std::sort(idx.begin(), idx.end(), [&](uint32_t l, uint32_t r) {
    const int64_t a = points_[l].coords[axis], b = points_[r].coords[axis];
    if (a != b) return a < b;
    return points_[l].payload < points_[r].payload;
  });
  layer->keys.reserve(idx.size());
  for (uint32_t i : idx) layer->keys.push_back(points_[i].coords[axis]);

  if (axis == dim_ - 1) {
    layer->base = true;
    layer->prefix_best.resize(idx.size());
    uint32_t best = idx[0];
    for (size_t i = 0; i < idx.size(); ++i) {
      if (points_[idx[i]].payload < points_[best].payload) best = idx[i];
      layer->prefix_best[i] = best;
    }
    return layer;
  }

  const size_t n = idx.size();
  layer->assoc.resize(4 * n);
  // recursive segment-tree build over [l, r) in sorted order
  auto rec = [&](auto&& self, size_t node, size_t l, size_t r) -> void {
    layer->assoc[node] =
        build_layer(std::vector<uint32_t>(idx.begin() + l, idx.begin() + r), axis + 1);
    if (r - l <= 1) return;
    const size_t mid = l + (r - l) / 2;
    self(self, 2 * node, l, mid);
    self(self, 2 * node + 1, mid, r);
  };
  rec(rec, 1, 0, n);
  return layer;
}

namespace {

// binary search for the count of keys <= bound; each probe counts as a visit
size_t prefix_count(const std::vector<int64_t>& keys, int64_t bound, uint64_t& visits) {
  size_t lo = 0, hi = keys.size();
  while (lo < hi) {
    ++visits;
    const size_t mid = lo + (hi - lo) / 2;
    if (keys[mid] <= bound)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace

std::optional<uint32_t> RangeTree::query_layer(const Layer& layer,
                                               const std::vector<int64_t>& bounds, int axis,
                                               uint64_t& visits) const {
  ++visits;
  const size_t cnt = prefix_count(layer.keys, bounds[axis], visits);
  if (cnt == 0) return std::nullopt;
  if (layer.base) return layer.prefix_best[cnt - 1];

  std::optional<uint32_t> best;
  auto consider = [&](std::optional<uint32_t> cand) {
    if (cand && (!best || points_[*cand].payload < points_[*best].payload)) best = cand;
  };
  // decompose the prefix [0, cnt) into canonical segment nodes
  auto rec = [&](auto&& self, size_t node, size_t l, size_t r) -> void {
    ++visits;
    if (cnt <= l) return;
    if (cnt >= r) {
      consider(query_layer(*layer.assoc[node], bounds, axis + 1, visits));
      return;
    }
    const size_t mid = l + (r - l) / 2;
    self(self, 2 * node, l, mid);
    self(self, 2 * node + 1, mid, r);
  };
  rec(rec, 1, 0, layer.keys.size());
  return best;
}

std::optional<RangePoint> RangeTree::query_dominated(const std::vector<int64_t>& bounds) const {
  if (static_cast<int>(bounds.size()) != dim_)
    throw std::invalid_argument("bounds dimension mismatch");
  if (!root_) return std::nullopt;
  uint64_t local = 0;
  auto res = query_layer(*root_, bounds, 0, local);
  visits_.fetch_add(local, std::memory_order_relaxed);
  if (!res) return std::nullopt;
  return points_[*res];
}

}  // namespace qmitm
