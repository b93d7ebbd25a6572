#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace cusplab {

using VertexId = std::uint32_t;
inline constexpr std::int32_t kUnreached = -1;
inline constexpr VertexId kNoVertex = static_cast<VertexId>(-1);

// Compressed adjacency with sorted neighbor lists.
class CsrGraph {
 public:
  CsrGraph() = default;

  // Edges are undirected; duplicates and self loops are dropped.
  static CsrGraph from_edges(std::size_t vertex_count,
                             std::vector<std::pair<VertexId, VertexId>> edges);

  [[nodiscard]] std::size_t vertex_count() const {
    return offsets_.empty() ? 0 : offsets_.size() - 1;
  }
  [[nodiscard]] std::size_t edge_count() const { return targets_.size() / 2; }
  [[nodiscard]] std::span<VertexId const> neighbors(VertexId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  [[nodiscard]] std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  [[nodiscard]] bool adjacent(VertexId u, VertexId v) const;

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<VertexId> targets_;
};

// Reusable breadth-first search buffers. Not thread safe; use one per worker.
class Bfs {
 public:
  explicit Bfs(CsrGraph const& g) : g_(&g), dist_(g.vertex_count(), kUnreached) {}

  // Multi-source BFS over the whole graph. Returns the distance array.
  std::vector<std::int32_t> const& run(std::span<VertexId const> sources);
  std::vector<std::int32_t> const& run(VertexId source) { return run(std::span(&source, 1)); }

  // Stops as soon as target is settled. Returns kUnreached when disconnected.
  std::int32_t distance(VertexId source, VertexId target);

  // Multi-source BFS that also records, per vertex, the least source index
  // among nearest sources.
  void run_labeled(std::span<VertexId const> sources, std::vector<std::int32_t>& dist,
                   std::vector<std::uint32_t>& label) const;

  [[nodiscard]] std::vector<std::int32_t> const& dist() const { return dist_; }

 private:
  CsrGraph const* g_;
  std::vector<std::int32_t> dist_;
  std::vector<VertexId> queue_;
  bool dirty_ = false;  // dist_ holds a full run() result
};

// A set of BFS buffers over one graph, created on first use.
class Workspace {
 public:
  explicit Workspace(CsrGraph const& g) : g_(&g) {}
  Bfs& operator[](std::size_t slot) {
    while (slots_.size() <= slot) slots_.push_back(std::make_unique<Bfs>(*g_));
    return *slots_[slot];
  }
  [[nodiscard]] CsrGraph const& graph() const { return *g_; }

 private:
  CsrGraph const* g_;
  std::vector<std::unique_ptr<Bfs>> slots_;
};

// Canonical shortest path u -> v from a distance array rooted at u:
// walk back from v, always stepping to the smallest-id neighbor one level
// closer to u.
std::vector<VertexId> trace_path(CsrGraph const& g, std::vector<std::int32_t> const& from_u,
                                 VertexId u, VertexId v);

}  // namespace cusplab
