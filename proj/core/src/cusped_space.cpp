#include "cusplab/cusped_space.hpp"

#include <algorithm>
#include <fstream>

#include <nlohmann/json.hpp>

#include "cusplab/error.hpp"
#include "cusplab/horoball.hpp"

namespace cusplab {

bool GeodesicDag::contains(VertexId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

std::size_t depth_for_diameter(std::int64_t diameter) {
  std::size_t k = 0;
  while ((std::int64_t{1} << k) < diameter) ++k;
  return k + 1;
}

CuspedSpace::CuspedSpace(Presentation p, std::size_t radius, std::size_t depth,
                         SpaceOptions const& options)
    : presentation_(std::move(p)),
      ball_(std::make_shared<CayleyBall const>(presentation_, radius, options.ball)),
      depth_(depth) {
  CayleyBall const& ball = *ball_;
  auto const n = static_cast<VertexId>(ball.size());
  std::size_t np = presentation_.peripherals().size();
  constexpr auto kNone = static_cast<std::uint32_t>(-1);

  coset_of_.assign(np, std::vector<std::uint32_t>(n, kNone));
  std::int64_t diameter = 1;
  for (std::size_t i = 0; i < np; ++i) {
    auto const step = static_cast<std::int64_t>(presentation_.peripheral_generator(i).size());
    for (VertexId v = 0; v < n; ++v) {
      if (coset_of_[i][v] != kNone) continue;
      // v is the least unassigned id, hence the shortlex-least member.
      auto slice = coset_slice(presentation_, ball.word(v), i, radius);
      HoroballInfo h;
      h.coset = CosetId{i, ball.word(v)};
      h.step = step;
      h.exponents = slice.exponents;
      for (std::size_t k = 0; k < slice.members.size(); ++k) {
        VertexId m = ball.vertex(slice.members[k]);
        if (coset_of_[i][m] != kNone) {
          fail(ErrorKind::invariant_violation, "coset slices overlap at " + ball.word(m).str());
        }
        coset_of_[i][m] = static_cast<std::uint32_t>(horoballs_.size());
        h.base.push_back(m);
        if (m == v) h.rep_position = k;
      }
      if (h.base.empty() || h.base[h.rep_position] != v) {
        fail(ErrorKind::truncation, "coset " + h.coset.str() + " lost its representative");
      }
      h.low_confidence = h.base.size() < 3;
      diameter = std::max(diameter, (h.exponents.back() - h.exponents.front()) * step);
      coset_index_.emplace(h.coset, horoballs_.size());
      horoballs_.push_back(std::move(h));
    }
  }
  if (depth_ == 0) depth_ = depth_for_diameter(diameter);

  std::uint64_t total = n;
  for (auto& h : horoballs_) {
    h.first = static_cast<VertexId>(total);
    total += depth_ * h.base.size();
  }
  if (total > options.max_vertices || total >= kNoVertex) {
    fail(ErrorKind::budget_exceeded, "cusped space would have " + std::to_string(total) +
                                         " vertices, budget is " +
                                         std::to_string(options.max_vertices));
  }

  frontier_.assign(total, 0);
  for (VertexId v : ball.sphere()) frontier_[v] = 1;

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(2 * total);
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId w : ball.graph().neighbors(v)) {
      if (v < w) edges.emplace_back(v, w);
    }
  }
  for (std::size_t hi = 0; hi < horoballs_.size(); ++hi) {
    auto const& h = horoballs_[hi];
    std::size_t m = h.base.size();
    auto id = [&](std::size_t pos, std::size_t level) {
      return level == 0 ? h.base[pos] : horo_vertex(hi, pos, level);
    };
    for (std::size_t level = 0; level <= depth_; ++level) {
      std::int64_t reach = (std::int64_t{1} << level) / h.step;
      for (std::size_t a = 0; a < m; ++a) {
        if (level < depth_) edges.emplace_back(id(a, level), id(a, level + 1));
        for (std::size_t b = a + 1; b < m; ++b) {
          std::int64_t d = (h.exponents[b] - h.exponents[a]) * h.step;
          if (!horizontal_edge(d, level)) break;
          edges.emplace_back(id(a, level), id(b, level));
        }
        // A missing exponent within reach means a missing horizontal neighbor.
        if (reach > 0) {
          long e = h.exponents[a];
          bool missing = false;
          for (long f = e - reach; f <= e + reach && !missing; ++f) {
            missing = !std::binary_search(h.exponents.begin(), h.exponents.end(), f);
          }
          if (missing) frontier_[id(a, level)] = 1;
        }
        if (level == depth_) frontier_[id(a, level)] = 1;
      }
    }
  }
  graph_ = CsrGraph::from_edges(total, std::move(edges));
  for (VertexId v = 0; v < total; ++v) {
    if (frontier_[v]) frontier_list_.push_back(v);
  }
}

VertexId CuspedSpace::horo_vertex(std::size_t horoball, std::size_t position,
                                  std::size_t level) const {
  auto const& h = horoballs_.at(horoball);
  if (level == 0) return h.base.at(position);
  if (level > depth_ || position >= h.base.size()) {
    fail(ErrorKind::invalid_argument, "horoball vertex out of range");
  }
  return static_cast<VertexId>(h.first + (level - 1) * h.base.size() + position);
}

VertexInfo CuspedSpace::info(VertexId v) const {
  if (v < ball_->size()) return VertexInfo{v, 0, 0};
  auto it = std::upper_bound(horoballs_.begin(), horoballs_.end(), v,
                             [](VertexId x, HoroballInfo const& h) { return x < h.first; });
  auto hi = static_cast<std::size_t>(std::distance(horoballs_.begin(), it)) - 1;
  auto const& h = horoballs_[hi];
  std::size_t offset = v - h.first;
  std::size_t m = h.base.size();
  return VertexInfo{h.base[offset % m], static_cast<std::uint32_t>(hi),
                    static_cast<std::uint32_t>(offset / m + 1)};
}

std::string CuspedSpace::label(VertexId v) const {
  auto i = info(v);
  std::string w = ball_->word(i.ball_vertex).str();
  if (w.empty()) w = "1";
  if (i.level == 0) return w;
  return "(" + w + "," + std::to_string(i.level) + ")@" + horoballs_[i.horoball].coset.str();
}

std::optional<std::size_t> CuspedSpace::find_horoball(CosetId const& c) const {
  auto it = coset_index_.find(c);
  if (it == coset_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t CuspedSpace::horoball_index(CosetId const& c) const {
  auto h = find_horoball(c);
  if (!h) fail(ErrorKind::invalid_argument, "no horoball for coset " + c.str());
  return *h;
}

VertexId CuspedSpace::deep_vertex(std::size_t horoball) const {
  return horo_vertex(horoball, horoballs_.at(horoball).rep_position, depth_);
}

bool CuspedSpace::in_horoball(VertexId v, std::size_t horoball) const {
  auto i = info(v);
  if (i.level > 0) return i.horoball == horoball;
  std::size_t p = horoballs_[horoball].coset.peripheral;
  return coset_of_[p][v] == horoball;
}

std::int32_t CuspedSpace::dist(VertexId u, VertexId v) const {
  Bfs bfs(graph_);
  return bfs.distance(u, v);
}

Measured CuspedSpace::dist_checked(VertexId u, VertexId v) const {
  Bfs bu(graph_);
  Bfs bv(graph_);
  auto const& du = bu.run(u);
  auto const& dv = bv.run(v);
  return Measured{du[v], suspect(u, v, du, dv)};
}

std::vector<VertexId> CuspedSpace::interior_vertices(std::size_t radius) const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < size(); ++v) {
    if (!frontier(v) && word(v).size() <= radius) out.push_back(v);
  }
  return out;
}

bool CuspedSpace::suspect(VertexId u, VertexId v, std::vector<std::int32_t> const& du,
                          std::vector<std::int32_t> const& dv) const {
  std::int32_t d = du[v];
  for (VertexId w : frontier_list_) {
    if (w != u && w != v && du[w] + dv[w] == d) return true;
  }
  return false;
}

std::vector<VertexId> CuspedSpace::geodesic(VertexId u, VertexId v) const {
  Bfs bfs(graph_);
  return trace_path(graph_, bfs.run(u), u, v);
}

GeodesicDag CuspedSpace::all_geodesics_dag(VertexId u, VertexId v) const {
  Bfs bu(graph_);
  Bfs bv(graph_);
  auto const& du = bu.run(u);
  auto const& dv = bv.run(v);
  GeodesicDag dag;
  dag.source = u;
  dag.target = v;
  dag.length = du[v];
  for (VertexId w = 0; w < size(); ++w) {
    if (du[w] != kUnreached && dv[w] != kUnreached && du[w] + dv[w] == dag.length) {
      dag.vertices.push_back(w);
      dag.depth.push_back(du[w]);
    }
  }
  return dag;
}

nlohmann::json CuspedSpace::manifest() const {
  nlohmann::json j;
  j["R"] = radius();
  j["D"] = depth_;
  j["vertex_count"] = size();
  j["edge_count"] = graph_.edge_count();
  j["ball_vertex_count"] = ball_->size();
  j["presentation"] = presentation_.to_json();
  auto table = nlohmann::json::array();
  for (auto const& h : horoballs_) {
    table.push_back({{"coset", h.coset.str()},
                     {"base_size", h.base.size()},
                     {"first_vertex", h.first},
                     {"low_confidence", h.low_confidence}});
  }
  j["horoballs"] = std::move(table);
  return j;
}

void CuspedSpace::write_edge_list(std::ostream& out) const {
  out << size() << '\n';
  for (VertexId v = 0; v < size(); ++v) {
    for (VertexId w : graph_.neighbors(v)) {
      if (v < w) out << v << ' ' << w << '\n';
    }
  }
}

void CuspedSpace::export_to(std::string const& path_prefix) const {
  std::ofstream manifest_out(path_prefix + ".json");
  std::ofstream edges_out(path_prefix + ".edges");
  if (!manifest_out || !edges_out) {
    fail(ErrorKind::invalid_argument, "cannot write space export at " + path_prefix);
  }
  manifest_out << manifest().dump(2) << '\n';
  write_edge_list(edges_out);
}

EntryExit entry_exit_on_set(std::span<VertexId const> path,
                            std::span<VertexId const> sorted_set) {
  return entry_exit_if(path, [&](VertexId v) {
    return std::binary_search(sorted_set.begin(), sorted_set.end(), v);
  });
}

}  // namespace cusplab
