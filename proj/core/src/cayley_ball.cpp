#include "cusplab/cayley_ball.hpp"

#include "cusplab/error.hpp"

namespace cusplab {

std::uint64_t free_ball_size(std::size_t rank, std::size_t radius) {
  if (rank == 1) return 2 * radius + 1;
  std::uint64_t total = 1;
  std::uint64_t layer = 2 * rank;
  for (std::size_t r = 1; r <= radius; ++r) {
    total += layer;
    if (total > (std::uint64_t{1} << 62)) return total;
    layer *= 2 * rank - 1;
  }
  return total;
}

CayleyBall::CayleyBall(Presentation const& p, std::size_t radius, BallOptions const& options)
    : radius_(radius), rank_(p.rank()) {
  if (radius < 1) fail(ErrorKind::invalid_argument, "ball radius must be at least 1");
  std::uint64_t count = free_ball_size(rank_, radius);
  if (count > options.max_vertices) {
    fail(ErrorKind::budget_exceeded, "ball would have " + std::to_string(count) +
                                         " vertices, budget is " +
                                         std::to_string(options.max_vertices));
  }
  std::size_t letters = 2 * rank_;
  words_.reserve(count);
  table_.assign(count * letters, kNoVertex);
  words_.emplace_back();
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(count);
  for (std::size_t head = 0; head < words_.size(); ++head) {
    if (words_[head].size() == radius) {
      sphere_.push_back(static_cast<VertexId>(head));
      continue;
    }
    for (std::size_t code = 0; code < letters; ++code) {
      auto g = Generator::from_code(code);
      if (!words_[head].empty() && words_[head].letters().back() == g.inv()) continue;
      Word w = words_[head];
      w.push(g);
      auto id = static_cast<VertexId>(words_.size());
      words_.push_back(std::move(w));
      table_[head * letters + code] = id;
      table_[static_cast<std::size_t>(id) * letters + g.inv().code()] =
          static_cast<VertexId>(head);
      edges.emplace_back(static_cast<VertexId>(head), id);
    }
  }
  graph_ = CsrGraph::from_edges(words_.size(), std::move(edges));
}

std::optional<VertexId> CayleyBall::find(Word const& w) const {
  if (w.size() > radius_) return std::nullopt;
  VertexId v = 0;
  for (auto g : w) v = step(v, g);
  return v;
}

VertexId CayleyBall::vertex(Word const& w) const {
  auto v = find(w);
  if (!v) fail(ErrorKind::invalid_argument, "word " + w.str() + " is outside the ball");
  return *v;
}

Measured CayleyBall::graph_distance(VertexId u, VertexId v) const {
  Bfs bfs(graph_);
  Measured m;
  m.value = bfs.distance(u, v);
  m.suspect = length(u) + length(v) > radius_;
  return m;
}

std::size_t CayleyBall::word_distance(VertexId u, VertexId v) const {
  return multiply(words_[u].inverse(), words_[v]).size();
}

void CayleyBall::write_edge_list(std::ostream& out) const {
  out << size() << '\n';
  for (VertexId v = 0; v < size(); ++v) {
    for (VertexId w : graph_.neighbors(v)) {
      if (v < w) out << v << ' ' << w << '\n';
    }
  }
}

}  // namespace cusplab
