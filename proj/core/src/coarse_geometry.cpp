#include "cusplab/coarse_geometry.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "cusplab/error.hpp"
#include "cusplab/parallel.hpp"
#include "cusplab/random.hpp"

namespace cusplab {

std::int32_t f_abc(DistanceOracle& oracle, VertexId a, VertexId b, VertexId c, VertexId z) {
  return std::max({oracle.side_distance(a, b)[z], oracle.side_distance(b, c)[z],
                   oracle.side_distance(a, c)[z]});
}

std::int32_t f_abc(CuspedSpace const& cs, VertexId a, VertexId b, VertexId c, VertexId z) {
  DistanceOracle oracle(cs);
  return f_abc(oracle, a, b, c, z);
}

std::int32_t candidate_radius(double delta_hat) {
  return static_cast<std::int32_t>(std::floor(11.0 * delta_hat)) + 1;
}

namespace {

QuasiCenter minimize_f(DistanceOracle& oracle, VertexId a, VertexId b, VertexId c,
                       std::int32_t radius) {
  if (a == c) fail(ErrorKind::undefined_tuple, "quasi-projection onto a degenerate side");
  auto const& side = oracle.side(a, c);
  if (b == a || b == c || std::find(side.begin(), side.end(), b) != side.end()) {
    return QuasiCenter{b, 0, 1};
  }
  auto const& d_ab = oracle.side_distance(a, b);
  auto const& d_bc = oracle.side_distance(b, c);
  auto const& d_ac = oracle.side_distance(a, c);
  QuasiCenter best{kNoVertex, 0, 0};
  auto n = static_cast<VertexId>(oracle.space().size());
  for (VertexId z = 0; z < n; ++z) {
    if (radius >= 0 && d_ac[z] > radius) continue;
    ++best.candidates;
    std::int32_t f = std::max({d_ab[z], d_bc[z], d_ac[z]});
    if (best.vertex == kNoVertex || f < best.f_value) {
      best.vertex = z;
      best.f_value = f;
    }
  }
  if (best.vertex == kNoVertex) {
    fail(ErrorKind::invariant_violation, "quasi-projection found no candidates");
  }
  return best;
}

}  // namespace

QuasiCenter quasi_projection(DistanceOracle& oracle, VertexId a, VertexId b, VertexId c,
                             double delta_hat) {
  return minimize_f(oracle, a, b, c, candidate_radius(delta_hat));
}

QuasiCenter quasi_projection(CuspedSpace const& cs, VertexId a, VertexId b, VertexId c,
                             double delta_hat) {
  DistanceOracle oracle(cs);
  return quasi_projection(oracle, a, b, c, delta_hat);
}

QuasiCenter quasi_projection_global(DistanceOracle& oracle, VertexId a, VertexId b, VertexId c) {
  return minimize_f(oracle, a, b, c, -1);
}

ExtendedValue cross_ratio(DistanceOracle& oracle, VertexId a, VertexId b, VertexId c,
                          VertexId d) {
  if (a == c || b == d) {
    fail(ErrorKind::undefined_tuple, a == c ? "cross-ratio with a = c" : "cross-ratio with b = d");
  }
  if (a == b || c == d) return ExtendedValue::plus_infinity();
  if (b == c || a == d) return ExtendedValue::minus_infinity();
  return ExtendedValue(cross_ratio_formula(oracle(a, d), oracle(d, c), oracle(b, c), oracle(a, b)));
}

ExtendedValue cross_ratio(CuspedSpace const& cs, VertexId a, VertexId b, VertexId c, VertexId d) {
  DistanceOracle oracle(cs);
  return cross_ratio(oracle, a, b, c, d);
}

namespace {

VertexId entry_point(DistanceOracle& oracle, VertexId x, VertexId deep, std::size_t horoball) {
  auto const& cs = oracle.space();
  auto const& path = oracle.side(x, deep);
  auto ee = entry_exit_if(std::span(path), [&](VertexId v) { return cs.in_horoball(v, horoball); });
  if (!ee.entry) fail(ErrorKind::invariant_violation, "geodesic to a deep vertex misses its horoball");
  return *ee.entry;
}

}  // namespace

RelativeCrossRatio relative_cross_ratio(DistanceOracle& oracle, VertexId x, VertexId y,
                                        std::size_t horoball, double delta_hat) {
  auto const& cs = oracle.space();
  for (VertexId p : {x, y}) {
    if (cs.in_horoball(p, horoball)) {
      fail(ErrorKind::invalid_proxy,
           cs.label(p) + " lies in the horoball of " + cs.horoballs()[horoball].coset.str());
    }
  }
  if (x == y) fail(ErrorKind::degenerate_pair, "relative cross-ratio of a point with itself");
  VertexId deep = cs.deep_vertex(horoball);
  RelativeCrossRatio out;
  out.z = entry_point(oracle, x, deep, horoball);
  out.w = entry_point(oracle, y, deep, horoball);
  // [x, y, w, z] by the formula; z = w gives a finite value here.
  out.r_estimate = ExtendedValue(
      cross_ratio_formula(oracle(x, out.z), oracle(out.z, out.w), oracle(y, out.w), oracle(x, y)));
  out.center = quasi_projection(oracle, x, deep, y, delta_hat);
  out.center_estimate = oracle.coset_distance(horoball)[out.center.vertex];
  return out;
}

ExitPointSet exit_point_set(DistanceOracle& oracle, std::size_t horoball, VertexId target) {
  auto const& cs = oracle.space();
  auto const& g = cs.graph();
  if (cs.in_horoball(target, horoball) && !cs.is_base(target)) {
    fail(ErrorKind::invalid_proxy, cs.label(target) + " lies inside the horoball");
  }
  VertexId deep = cs.deep_vertex(horoball);
  auto const& du = oracle.from(deep);
  auto const& dv = oracle.from(target);
  std::int32_t length = du[target];
  auto in_coset = [&](VertexId v) { return cs.is_base(v) && cs.in_horoball(v, horoball); };

  // Walk the geodesic DAG from the target back towards the deep vertex.
  // good[v]: v reaches the target along the DAG without meeting the coset.
  std::vector<VertexId> layer{target};
  std::map<VertexId, bool> good;
  ExitPointSet out;
  out.horoball = horoball;
  out.target = target;
  if (in_coset(target)) {
    out.vertices.push_back(target);
    return out;
  }
  good[target] = true;
  while (!layer.empty()) {
    std::vector<VertexId> next;
    for (VertexId v : layer) {
      for (VertexId w : g.neighbors(v)) {
        if (du[w] != du[v] - 1 || dv[w] != dv[v] + 1 || du[w] + dv[w] != length) continue;
        if (good.count(w)) continue;
        if (in_coset(w)) {
          out.vertices.push_back(w);
          good[w] = false;
        } else {
          good[w] = true;
          next.push_back(w);
        }
      }
    }
    layer.swap(next);
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  if (out.vertices.empty()) {
    fail(ErrorKind::invariant_violation, "no geodesic from the deep vertex meets its coset");
  }
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < out.vertices.size(); ++j) {
      out.diameter = std::max(out.diameter, cs.ball().word_distance(out.vertices[i], out.vertices[j]));
    }
  }
  return out;
}

VertexId exit_point(DistanceOracle& oracle, std::size_t horoball, VertexId target) {
  return exit_point_set(oracle, horoball, target).vertices.front();
}

VertexId exit_point_greatest(DistanceOracle& oracle, std::size_t horoball, VertexId target) {
  return exit_point_set(oracle, horoball, target).vertices.back();
}

VertexId nearest_point_projection(CuspedSpace const& cs, VertexId x,
                                  std::vector<VertexId> const& path) {
  if (path.empty()) fail(ErrorKind::invalid_argument, "projection onto an empty path");
  Bfs bfs(cs.graph());
  std::vector<std::int32_t> dist;
  std::vector<std::uint32_t> label;
  bfs.run_labeled(path, dist, label);
  return path[label[x]];
}

ProbeResult visual_boundedness_probe(CuspedSpace const& cs, std::size_t horoball,
                                     ProbeOptions const& options) {
  auto const& h = cs.horoballs().at(horoball);
  std::size_t n = options.samples;
  std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, n));
  std::vector<std::unique_ptr<Bfs>> scratch;
  for (std::size_t w = 0; w < jobs; ++w) scratch.push_back(std::make_unique<Bfs>(cs.graph()));
  std::vector<std::optional<std::size_t>> diam(n);
  auto ball_n = cs.ball().size();
  parallel_for(n, jobs, [&](std::size_t i, std::size_t worker) {
    Rng rng(options.seed, i);
    for (std::size_t attempt = 0; attempt < options.attempts_per_sample; ++attempt) {
      auto x = static_cast<VertexId>(rng.uniform_index(ball_n));
      if (cs.in_horoball(x, horoball)) continue;
      auto const& dx = scratch[worker]->run(x);
      std::vector<VertexId> entries;
      for (std::size_t pos = 0; pos < h.base.size(); ++pos) {
        VertexId target = cs.horo_vertex(horoball, pos, cs.depth());
        auto path = trace_path(cs.graph(), dx, x, target);
        auto ee = entry_exit_if(std::span(path),
                                [&](VertexId v) { return cs.in_horoball(v, horoball); });
        entries.push_back(*ee.entry);
      }
      std::size_t d = 0;
      for (std::size_t p = 0; p < entries.size(); ++p) {
        for (std::size_t q = p + 1; q < entries.size(); ++q) {
          d = std::max(d, cs.ball().word_distance(entries[p], entries[q]));
        }
      }
      diam[i] = d;
      return;
    }
  });
  ProbeResult out;
  for (auto const& d : diam) {
    if (!d) continue;
    ++out.samples;
    out.max_diameter = std::max(out.max_diameter, *d);
    out.diameters.push_back(*d);
  }
  if (out.samples < n) {
    fail(ErrorKind::sampling_starved, "visual boundedness probe achieved " +
                                          std::to_string(out.samples) + " of " + std::to_string(n));
  }
  return out;
}

std::int32_t default_projection_margin(double delta_hat) {
  return static_cast<std::int32_t>(std::ceil(2.0 * delta_hat)) + 1;
}

ProbeResult bounded_projection_probe(CuspedSpace const& cs, std::int32_t P,
                                     ProbeOptions const& options) {
  std::size_t n = options.samples;
  std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, n));
  std::vector<std::unique_ptr<Workspace>> scratch;
  for (std::size_t w = 0; w < jobs; ++w) scratch.push_back(std::make_unique<Workspace>(cs.graph()));
  std::vector<std::optional<std::size_t>> diam(n);
  auto vertex_count = cs.ball().size();
  parallel_for(n, jobs, [&](std::size_t i, std::size_t worker) {
    Workspace& ws = *scratch[worker];
    Rng rng(options.seed, i);
    std::vector<std::int32_t> dg;
    std::vector<std::uint32_t> label;
    for (std::size_t attempt = 0; attempt < options.attempts_per_sample; ++attempt) {
      auto u = static_cast<VertexId>(rng.uniform_index(vertex_count));
      auto v = static_cast<VertexId>(rng.uniform_index(vertex_count));
      if (u == v) continue;
      auto gamma = trace_path(cs.graph(), ws[0].run(u), u, v);
      ws[1].run_labeled(gamma, dg, label);
      std::vector<VertexId> far;
      for (VertexId x = 0; x < vertex_count; ++x) {
        if (dg[x] > P) far.push_back(x);
      }
      if (far.size() < 2) continue;
      VertexId y = far[rng.uniform_index(far.size())];
      auto const& dy = ws[0].run(y);
      // Partners with d(y, x) < d(y, g) + d(x, g) - 2P; a segment entering the
      // P-neighborhood of g is at least that long.
      std::vector<VertexId> near;
      for (VertexId x : far) {
        if (x != y && dy[x] < dg[y] + dg[x] - 2 * P) near.push_back(x);
      }
      if (near.empty()) continue;
      VertexId z = near[rng.uniform_index(near.size())];
      auto segment = trace_path(cs.graph(), dy, y, z);
      bool outside = std::all_of(segment.begin(), segment.end(),
                                 [&](VertexId s) { return dg[s] > P; });
      if (!outside) continue;
      std::uint32_t lo = label[segment.front()];
      std::uint32_t hi = lo;
      for (VertexId s : segment) {
        lo = std::min(lo, label[s]);
        hi = std::max(hi, label[s]);
      }
      diam[i] = hi - lo;
      return;
    }
  });
  ProbeResult out;
  for (auto const& d : diam) {
    if (!d) continue;
    ++out.samples;
    out.max_diameter = std::max(out.max_diameter, *d);
    out.diameters.push_back(*d);
  }
  if (out.samples < n) {
    fail(ErrorKind::sampling_starved, "bounded projection probe achieved " +
                                          std::to_string(out.samples) + " of " + std::to_string(n));
  }
  return out;
}

void ConstantsLedger::record(std::string const& name, double value, std::size_t R,
                             std::size_t D, std::uint64_t seed, std::size_t samples) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    fail(ErrorKind::invariant_violation, "ledger value for " + name + " must be finite and >= 0");
  }
  Key key{name, R, D};
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    entries_.emplace(key, LedgerEntry{value, samples, seed});
    return;
  }
  it->second.max = std::max(it->second.max, value);
  it->second.samples += samples;
  it->second.seed = std::min(it->second.seed, seed);
}

void ConstantsLedger::merge(ConstantsLedger const& other) {
  for (auto const& [key, e] : other.entries_) {
    record(std::get<0>(key), e.max, std::get<1>(key), std::get<2>(key), e.seed, e.samples);
  }
}

std::optional<LedgerEntry> ConstantsLedger::get(std::string const& name, std::size_t R,
                                                std::size_t D) const {
  auto it = entries_.find(Key{name, R, D});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

nlohmann::json ConstantsLedger::to_json() const {
  auto out = nlohmann::json::array();
  for (auto const& [key, e] : entries_) {
    out.push_back({{"name", std::get<0>(key)},
                   {"max", e.max},
                   {"samples", e.samples},
                   {"R", std::get<1>(key)},
                   {"D", std::get<2>(key)},
                   {"seed", e.seed}});
  }
  return out;
}

ConstantsLedger ConstantsLedger::from_json(nlohmann::json const& j) {
  ConstantsLedger ledger;
  try {
    for (auto const& e : j) {
      ledger.record(e.at("name").get<std::string>(), e.at("max").get<double>(),
                    e.at("R").get<std::size_t>(), e.at("D").get<std::size_t>(),
                    e.at("seed").get<std::uint64_t>(), e.at("samples").get<std::size_t>());
    }
  } catch (nlohmann::json::exception const& e) {
    fail(ErrorKind::parse, std::string("ledger: ") + e.what());
  }
  return ledger;
}

bool operator==(ConstantsLedger const& a, ConstantsLedger const& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (auto const& [key, e] : a.entries_) {
    auto it = b.entries_.find(key);
    if (it == b.entries_.end()) return false;
    if (it->second.max != e.max || it->second.samples != e.samples || it->second.seed != e.seed) {
      return false;
    }
  }
  return true;
}

}  // namespace cusplab
