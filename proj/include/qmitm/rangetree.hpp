#pragma once
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace qmitm {

struct RangePoint {
  std::vector<int64_t> coords;
  uint64_t payload;  // unique witness identifier within one tree
};

// Static layered range tree over integer d-tuples. Supports one query form:
// "is there a stored point with every coordinate <= the bound tuple", and
// returns the qualifying point with the smallest payload. No fractional
// cascading; d = 1 degenerates to a sorted array with a prefix-minimum.
class RangeTree {
 public:
  RangeTree();
  static RangeTree build(std::vector<RangePoint> points, int dimension);

  // Smallest-payload point dominated by `bounds`, or nullopt. Increments the
  // visit counter by the number of structure nodes touched. Safe to call
  // concurrently after build (the counter is atomic).
  std::optional<RangePoint> query_dominated(const std::vector<int64_t>& bounds) const;

  int dimension() const { return dim_; }
  size_t size() const { return points_.size(); }
  const std::vector<RangePoint>& points() const { return points_; }

  uint64_t visit_count() const { return visits_.load(std::memory_order_relaxed); }
  void reset_visit_count() const { visits_.store(0, std::memory_order_relaxed); }

  RangeTree(RangeTree&& other) noexcept;
  RangeTree& operator=(RangeTree&& other) noexcept;
  ~RangeTree();

 private:
  struct Layer;

  int dim_ = 0;
  std::vector<RangePoint> points_;
  std::unique_ptr<Layer> root_;
  mutable std::atomic<uint64_t> visits_{0};

  std::unique_ptr<Layer> build_layer(std::vector<uint32_t> idx, int axis) const;
  std::optional<uint32_t> query_layer(const Layer& layer, const std::vector<int64_t>& bounds,
                                      int axis, uint64_t& visits) const;
};

}  // namespace qmitm
