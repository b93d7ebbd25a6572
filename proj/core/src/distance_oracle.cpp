#include "cusplab/distance_oracle.hpp"

namespace cusplab {

std::vector<std::int32_t> const& DistanceOracle::from(VertexId v) {
  auto& slot = from_[v];
  if (!slot) slot = std::make_unique<Array>(ws_[0].run(v));
  return *slot;
}

std::int32_t DistanceOracle::operator()(VertexId u, VertexId v) {
  if (u == v) return 0;
  if (auto it = from_.find(u); it != from_.end()) return (*it->second)[v];
  if (auto it = from_.find(v); it != from_.end()) return (*it->second)[u];
  return from(u)[v];
}

std::vector<VertexId> const& DistanceOracle::side(VertexId u, VertexId v) {
  auto key = std::make_pair(u, v);
  auto it = sides_.find(key);
  if (it == sides_.end()) {
    it = sides_.emplace(key, trace_path(cs_->graph(), from(u), u, v)).first;
  }
  return it->second;
}

std::vector<std::int32_t> const& DistanceOracle::side_distance(VertexId u, VertexId v) {
  auto key = std::make_pair(u, v);
  auto& slot = side_dist_[key];
  if (!slot) {
    auto const& path = side(u, v);
    slot = std::make_unique<Array>(ws_[0].run(path));
  }
  return *slot;
}

std::vector<std::int32_t> const& DistanceOracle::coset_distance(std::size_t horoball) {
  auto& slot = coset_dist_[horoball];
  if (!slot) slot = std::make_unique<Array>(ws_[0].run(cs_->coset_vertices(horoball)));
  return *slot;
}

void DistanceOracle::clear() {
  from_.clear();
  sides_.clear();
  side_dist_.clear();
  coset_dist_.clear();
}

}  // namespace cusplab
