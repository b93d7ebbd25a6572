#pragma once

#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cusplab/cayley_ball.hpp"
#include "cusplab/graph.hpp"
#include "cusplab/presentation.hpp"

namespace cusplab {

struct SpaceOptions {
  BallOptions ball;
  std::uint64_t max_vertices = 60'000'000;
};

struct HoroballInfo {
  CosetId coset;
  std::vector<VertexId> base;   // ball vertices, ordered by exponent
  std::vector<long> exponents;  // base[i] = rep * h^exponents[i]
  std::int64_t step = 1;        // |h|, so d_H = |e_i - e_j| * step
  VertexId first = 0;           // id of (base[0], level 1)
  std::size_t rep_position = 0; // index of the representative in base
  bool low_confidence = false;  // fewer than three base points
};

struct VertexInfo {
  VertexId ball_vertex = 0;         // the base column
  std::uint32_t horoball = 0;       // valid when level > 0
  std::uint32_t level = 0;          // 0 for Cayley-ball vertices
};

// Vertices on some shortest u-v path, grouped by distance from u.
struct GeodesicDag {
  VertexId source = 0;
  VertexId target = 0;
  std::int32_t length = 0;
  std::vector<VertexId> vertices;        // sorted by id
  std::vector<std::int32_t> depth;       // distance from source, parallel to vertices
  [[nodiscard]] bool contains(VertexId v) const;
};

struct EntryExit {
  std::optional<VertexId> entry;
  std::optional<VertexId> exit;
};

// Cayley ball with a truncated combinatorial horoball glued to every
// peripheral coset that meets it. Ids [0, ball size) are the ball vertices;
// horoball vertices follow, grouped by horoball, then level, then base
// position.
class CuspedSpace {
 public:
  // depth 0 selects the default depth.
  CuspedSpace(Presentation p, std::size_t radius, std::size_t depth,
              SpaceOptions const& options = {});

  [[nodiscard]] Presentation const& presentation() const { return presentation_; }
  [[nodiscard]] CayleyBall const& ball() const { return *ball_; }
  [[nodiscard]] std::size_t radius() const { return ball_->radius(); }
  [[nodiscard]] std::size_t depth() const { return depth_; }
  [[nodiscard]] std::size_t size() const { return graph_.vertex_count(); }
  [[nodiscard]] CsrGraph const& graph() const { return graph_; }
  [[nodiscard]] std::vector<HoroballInfo> const& horoballs() const { return horoballs_; }

  [[nodiscard]] bool is_base(VertexId v) const { return v < ball_->size(); }
  [[nodiscard]] VertexInfo info(VertexId v) const;
  [[nodiscard]] VertexId horo_vertex(std::size_t horoball, std::size_t position,
                                     std::size_t level) const;
  [[nodiscard]] VertexId vertex(Word const& w) const { return ball_->vertex(w); }
  [[nodiscard]] Word const& word(VertexId v) const { return ball_->word(info(v).ball_vertex); }
  [[nodiscard]] std::string label(VertexId v) const;

  // Horoball index of the coset of peripheral p through ball vertex v.
  [[nodiscard]] std::uint32_t horoball_of(VertexId ball_vertex, std::size_t peripheral) const {
    return coset_of_[peripheral][ball_vertex];
  }
  [[nodiscard]] std::optional<std::size_t> find_horoball(CosetId const& c) const;
  [[nodiscard]] std::size_t horoball_index(CosetId const& c) const;  // throws when absent
  // Deepest vertex over the coset representative.
  [[nodiscard]] VertexId deep_vertex(std::size_t horoball) const;
  // Level-0 set of the horoball.
  [[nodiscard]] std::span<VertexId const> coset_vertices(std::size_t horoball) const {
    return horoballs_[horoball].base;
  }
  // Whether v lies in the closed horoball (including level 0).
  [[nodiscard]] bool in_horoball(VertexId v, std::size_t horoball) const;

  // Vertices whose neighborhood differs from the untruncated space.
  [[nodiscard]] bool frontier(VertexId v) const { return frontier_[v] != 0; }
  [[nodiscard]] std::vector<VertexId> const& frontier_vertices() const { return frontier_list_; }
  // Non-frontier vertices whose base word has length <= radius, in id order.
  [[nodiscard]] std::vector<VertexId> interior_vertices(std::size_t radius) const;
  // Suspect test from distance arrays rooted at u and v.
  [[nodiscard]] bool suspect(VertexId u, VertexId v, std::vector<std::int32_t> const& du,
                             std::vector<std::int32_t> const& dv) const;

  [[nodiscard]] std::int32_t dist(VertexId u, VertexId v) const;
  // Suspect when some shortest path passes through a frontier vertex
  // other than u and v.
  [[nodiscard]] Measured dist_checked(VertexId u, VertexId v) const;
  [[nodiscard]] std::vector<VertexId> geodesic(VertexId u, VertexId v) const;
  [[nodiscard]] GeodesicDag all_geodesics_dag(VertexId u, VertexId v) const;

  [[nodiscard]] nlohmann::json manifest() const;
  void write_edge_list(std::ostream& out) const;
  void export_to(std::string const& path_prefix) const;

 private:
  Presentation presentation_;
  std::shared_ptr<CayleyBall const> ball_;
  std::size_t depth_;
  std::vector<HoroballInfo> horoballs_;
  std::vector<std::vector<std::uint32_t>> coset_of_;
  std::map<CosetId, std::size_t> coset_index_;
  std::vector<std::uint8_t> frontier_;
  std::vector<VertexId> frontier_list_;
  CsrGraph graph_;
};

// Default truncation depth for a largest coset diameter: ceil(log2(diam)) + 1.
std::size_t depth_for_diameter(std::int64_t diameter);

EntryExit entry_exit_on_set(std::span<VertexId const> path,
                            std::span<VertexId const> sorted_set);

template <class Pred>
EntryExit entry_exit_if(std::span<VertexId const> path, Pred in_set) {
  EntryExit out;
  for (VertexId v : path) {
    if (in_set(v)) {
      if (!out.entry) out.entry = v;
      out.exit = v;
    }
  }
  return out;
}

}  // namespace cusplab
