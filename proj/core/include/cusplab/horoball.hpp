#pragma once

#include <cstdint>
#include <vector>

#include "cusplab/graph.hpp"

namespace cusplab {

// Horizontal edges at level n join base points at metric distance in (0, 2^n].
inline bool horizontal_edge(std::int64_t base_distance, std::size_t level) {
  return base_distance > 0 && base_distance <= (std::int64_t{1} << level);
}

// Truncated combinatorial horoball over an explicit finite metric.
// Vertex (x, n) has id n * base_size + x.
class Horoball {
 public:
  Horoball(std::vector<std::vector<std::int64_t>> metric, std::size_t depth);

  [[nodiscard]] std::size_t base_size() const { return metric_.size(); }
  [[nodiscard]] std::size_t depth() const { return depth_; }
  [[nodiscard]] VertexId id(std::size_t x, std::size_t level) const {
    return static_cast<VertexId>(level * base_size() + x);
  }
  [[nodiscard]] CsrGraph const& graph() const { return graph_; }
  [[nodiscard]] std::int64_t base_distance(std::size_t x, std::size_t y) const {
    return metric_[x][y];
  }

  // Distance between (x, n) and (y, n) using only level-n edges;
  // kUnreached when they are not connected inside the layer.
  [[nodiscard]] std::int32_t horizontal_distance(std::size_t x, std::size_t y,
                                                 std::size_t level) const;
  // Distance in the whole horoball graph.
  [[nodiscard]] std::int32_t distance(std::size_t x, std::size_t xl, std::size_t y,
                                      std::size_t yl) const;

 private:
  std::vector<std::vector<std::int64_t>> metric_;
  std::size_t depth_;
  CsrGraph graph_;
};

Horoball build_horoball(std::vector<std::vector<std::int64_t>> metric, std::size_t depth);

// Metric of n evenly spaced points on a line with the given spacing.
std::vector<std::vector<std::int64_t>> path_metric(std::size_t n, std::int64_t spacing = 1);

}  // namespace cusplab
