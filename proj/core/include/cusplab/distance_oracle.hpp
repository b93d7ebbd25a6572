#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "cusplab/cusped_space.hpp"

namespace cusplab {

// Caches full BFS arrays, canonical geodesics and distance-to-path arrays
// for the vertices of the tuple currently being evaluated. One per worker.
class DistanceOracle {
 public:
  explicit DistanceOracle(CuspedSpace const& cs) : cs_(&cs), ws_(cs.graph()) {}

  [[nodiscard]] CuspedSpace const& space() const { return *cs_; }

  std::vector<std::int32_t> const& from(VertexId v);
  std::int32_t operator()(VertexId u, VertexId v);
  // Canonical geodesic u -> v (traced back from v over BFS levels of u).
  std::vector<VertexId> const& side(VertexId u, VertexId v);
  // Distance from every vertex to side(u, v).
  std::vector<std::int32_t> const& side_distance(VertexId u, VertexId v);
  // Distance from every vertex to the level-0 set of a horoball.
  std::vector<std::int32_t> const& coset_distance(std::size_t horoball);

  // Uncached early-exit BFS distance.
  std::int32_t local_distance(VertexId u, VertexId v) { return ws_[0].distance(u, v); }

  void clear();

 private:
  using Array = std::vector<std::int32_t>;
  CuspedSpace const* cs_;
  Workspace ws_;
  std::map<VertexId, std::unique_ptr<Array>> from_;
  std::map<std::pair<VertexId, VertexId>, std::vector<VertexId>> sides_;
  std::map<std::pair<VertexId, VertexId>, std::unique_ptr<Array>> side_dist_;
  std::map<std::size_t, std::unique_ptr<Array>> coset_dist_;
};

}  // namespace cusplab
