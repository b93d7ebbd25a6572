#include "cusplab/graph.hpp"

#include <algorithm>

#include "cusplab/error.hpp"

namespace cusplab {

CsrGraph CsrGraph::from_edges(std::size_t vertex_count,
                              std::vector<std::pair<VertexId, VertexId>> edges) {
  for (auto& [a, b] : edges) {
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  CsrGraph g;
  g.offsets_.assign(vertex_count + 1, 0);
  for (auto [a, b] : edges) {
    if (a == b) continue;
    if (a >= vertex_count || b >= vertex_count) {
      fail(ErrorKind::invariant_violation, "edge endpoint out of range");
    }
    ++g.offsets_[a + 1];
    ++g.offsets_[b + 1];
  }
  for (std::size_t i = 0; i < vertex_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.targets_.resize(g.offsets_.back());
  std::vector<std::uint64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [a, b] : edges) {
    if (a == b) continue;
    g.targets_[fill[a]++] = b;
    g.targets_[fill[b]++] = a;
  }
  for (std::size_t v = 0; v < vertex_count; ++v) {
    std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  return g;
}

bool CsrGraph::adjacent(VertexId u, VertexId v) const {
  auto n = neighbors(u);
  return std::binary_search(n.begin(), n.end(), v);
}

std::vector<std::int32_t> const& Bfs::run(std::span<VertexId const> sources) {
  std::fill(dist_.begin(), dist_.end(), kUnreached);
  dirty_ = true;
  queue_.clear();
  for (auto s : sources) {
    if (dist_[s] == kUnreached) {
      dist_[s] = 0;
      queue_.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue_.size(); ++head) {
    VertexId v = queue_[head];
    std::int32_t next = dist_[v] + 1;
    for (VertexId w : g_->neighbors(v)) {
      if (dist_[w] == kUnreached) {
        dist_[w] = next;
        queue_.push_back(w);
      }
    }
  }
  return dist_;
}

std::int32_t Bfs::distance(VertexId source, VertexId target) {
  if (source == target) return 0;
  if (dirty_) {
    std::fill(dist_.begin(), dist_.end(), kUnreached);
    dirty_ = false;
  }
  // Only touched entries are reset afterwards, so early exit stays cheap.
  queue_.clear();
  dist_[source] = 0;
  queue_.push_back(source);
  std::int32_t result = kUnreached;
  for (std::size_t head = 0; head < queue_.size() && result == kUnreached; ++head) {
    VertexId v = queue_[head];
    std::int32_t next = dist_[v] + 1;
    for (VertexId w : g_->neighbors(v)) {
      if (dist_[w] == kUnreached) {
        dist_[w] = next;
        queue_.push_back(w);
        if (w == target) {
          result = next;
          break;
        }
      }
    }
  }
  for (auto v : queue_) dist_[v] = kUnreached;
  return result;
}

void Bfs::run_labeled(std::span<VertexId const> sources, std::vector<std::int32_t>& dist,
                      std::vector<std::uint32_t>& label) const {
  std::size_t n = g_->vertex_count();
  dist.assign(n, kUnreached);
  label.assign(n, static_cast<std::uint32_t>(-1));
  std::vector<VertexId> frontier;
  for (std::uint32_t i = 0; i < sources.size(); ++i) {
    auto s = sources[i];
    if (dist[s] == kUnreached) {
      dist[s] = 0;
      label[s] = i;
      frontier.push_back(s);
    }
  }
  // Level-synchronous so that a vertex sees every nearest source before
  // its label is final.
  std::vector<VertexId> next;
  std::int32_t level = 0;
  while (!frontier.empty()) {
    next.clear();
    for (VertexId v : frontier) {
      for (VertexId w : g_->neighbors(v)) {
        if (dist[w] == kUnreached) {
          dist[w] = level + 1;
          label[w] = label[v];
          next.push_back(w);
        } else if (dist[w] == level + 1 && label[v] < label[w]) {
          label[w] = label[v];
        }
      }
    }
    ++level;
    frontier.swap(next);
  }
}

std::vector<VertexId> trace_path(CsrGraph const& g, std::vector<std::int32_t> const& from_u,
                                 VertexId u, VertexId v) {
  if (from_u[v] == kUnreached) fail(ErrorKind::invariant_violation, "target unreachable");
  std::vector<VertexId> path;
  path.reserve(static_cast<std::size_t>(from_u[v]) + 1);
  VertexId cur = v;
  path.push_back(cur);
  while (cur != u) {
    std::int32_t want = from_u[cur] - 1;
    VertexId step = kNoVertex;
    for (VertexId w : g.neighbors(cur)) {
      if (from_u[w] == want) {
        step = w;
        break;
      }
    }
    cur = step;
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace cusplab
