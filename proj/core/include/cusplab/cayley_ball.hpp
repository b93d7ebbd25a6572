#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "cusplab/graph.hpp"
#include "cusplab/presentation.hpp"

namespace cusplab {

struct BallOptions {
  // Refuse to build balls with more vertices than this.
  std::uint64_t max_vertices = 20'000'000;
};

// Number of reduced words of length <= radius in a free group of the given rank.
std::uint64_t free_ball_size(std::size_t rank, std::size_t radius);

struct Measured {
  std::int32_t value = 0;
  bool suspect = false;  // truncation may have affected the value
};

// Radius-R ball of the free-group Cayley graph. Vertex ids follow a BFS
// from the identity in letter order, so ids are in shortlex order.
class CayleyBall {
 public:
  CayleyBall(Presentation const& p, std::size_t radius, BallOptions const& options = {});

  [[nodiscard]] std::size_t radius() const { return radius_; }
  [[nodiscard]] std::size_t rank() const { return rank_; }
  [[nodiscard]] std::size_t size() const { return words_.size(); }
  [[nodiscard]] Word const& word(VertexId v) const { return words_[v]; }
  [[nodiscard]] std::size_t length(VertexId v) const { return words_[v].size(); }
  [[nodiscard]] std::vector<VertexId> const& sphere() const { return sphere_; }
  [[nodiscard]] CsrGraph const& graph() const { return graph_; }

  // Neighbor across letter g, or kNoVertex when it leaves the ball.
  [[nodiscard]] VertexId step(VertexId v, Generator g) const {
    return table_[static_cast<std::size_t>(v) * 2 * rank_ + g.code()];
  }
  [[nodiscard]] std::optional<VertexId> find(Word const& w) const;
  [[nodiscard]] VertexId vertex(Word const& w) const;  // throws when absent

  // BFS distance inside the ball, flagged when |u| + |v| > R.
  [[nodiscard]] Measured graph_distance(VertexId u, VertexId v) const;
  // Exact word metric |u^-1 v|, independent of truncation.
  [[nodiscard]] std::size_t word_distance(VertexId u, VertexId v) const;

  // Header line with the vertex count, then one "u v" line per edge.
  void write_edge_list(std::ostream& out) const;

 private:
  std::size_t radius_;
  std::size_t rank_;
  std::vector<Word> words_;
  std::vector<VertexId> table_;
  std::vector<VertexId> sphere_;
  CsrGraph graph_;
};

}  // namespace cusplab
