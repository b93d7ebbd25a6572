#include "cusplab/horoball.hpp"

#include <cstdlib>

#include "cusplab/error.hpp"

namespace cusplab {

Horoball::Horoball(std::vector<std::vector<std::int64_t>> metric, std::size_t depth)
    : metric_(std::move(metric)), depth_(depth) {
  if (depth < 1) fail(ErrorKind::invalid_depth, "horoball depth must be at least 1");
  std::size_t m = metric_.size();
  if (m == 0) fail(ErrorKind::invalid_metric, "empty horoball base");
  for (std::size_t x = 0; x < m; ++x) {
    if (metric_[x].size() != m) fail(ErrorKind::invalid_metric, "metric is not square");
  }
  for (std::size_t x = 0; x < m; ++x) {
    if (metric_[x][x] != 0) fail(ErrorKind::invalid_metric, "nonzero diagonal entry");
    for (std::size_t y = x + 1; y < m; ++y) {
      if (metric_[x][y] != metric_[y][x]) {
        fail(ErrorKind::invalid_metric,
             "asymmetric at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
      }
      if (metric_[x][y] <= 0) {
        fail(ErrorKind::invalid_metric,
             "nonpositive distance at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
      }
    }
  }
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::size_t n = 0; n <= depth; ++n) {
    for (std::size_t x = 0; x < m; ++x) {
      if (n < depth) edges.emplace_back(id(x, n), id(x, n + 1));
      for (std::size_t y = x + 1; y < m; ++y) {
        if (horizontal_edge(metric_[x][y], n)) edges.emplace_back(id(x, n), id(y, n));
      }
    }
  }
  graph_ = CsrGraph::from_edges((depth + 1) * m, std::move(edges));
}

std::int32_t Horoball::horizontal_distance(std::size_t x, std::size_t y,
                                           std::size_t level) const {
  std::size_t m = base_size();
  std::vector<std::int32_t> dist(m, kUnreached);
  std::vector<std::size_t> queue{x};
  dist[x] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t v = queue[head];
    if (v == y) return dist[v];
    for (std::size_t w = 0; w < m; ++w) {
      if (dist[w] == kUnreached && horizontal_edge(metric_[v][w], level)) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist[y];
}

std::int32_t Horoball::distance(std::size_t x, std::size_t xl, std::size_t y,
                                std::size_t yl) const {
  Bfs bfs(graph_);
  return bfs.distance(id(x, xl), id(y, yl));
}

Horoball build_horoball(std::vector<std::vector<std::int64_t>> metric, std::size_t depth) {
  return Horoball(std::move(metric), depth);
}

std::vector<std::vector<std::int64_t>> path_metric(std::size_t n, std::int64_t spacing) {
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[i][j] = std::abs(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(j)) * spacing;
    }
  }
  return d;
}

}  // namespace cusplab
