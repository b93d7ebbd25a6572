#include "cusplab/hyperbolicity.hpp"

#include <algorithm>

#include "cusplab/error.hpp"
#include "cusplab/parallel.hpp"
#include "cusplab/random.hpp"

namespace cusplab {

HalfInt gromov_product(CuspedSpace const& cs, VertexId a, VertexId b, VertexId p) {
  return gromov_product(cs.dist(a, p), cs.dist(b, p), cs.dist(a, b));
}

namespace {

std::int32_t side_slimness(Workspace& ws, std::vector<VertexId> const& side,
                           std::vector<VertexId> const& other1,
                           std::vector<VertexId> const& other2) {
  std::vector<VertexId> sources(other1);
  sources.insert(sources.end(), other2.begin(), other2.end());
  auto const& d = ws[3].run(sources);
  std::int32_t worst = 0;
  for (VertexId v : side) worst = std::max(worst, d[v]);
  return worst;
}

// Largest discrepancy between points at equal distance t <= limit from the
// common corner along two sides that both start there.
std::int32_t corner_thinness(Workspace& ws, std::vector<VertexId> const& s1,
                             std::vector<VertexId> const& s2, std::int64_t limit) {
  std::int32_t worst = 0;
  for (std::int64_t t = 0; t <= limit; ++t) {
    auto i = static_cast<std::size_t>(t);
    if (i >= s1.size() || i >= s2.size()) break;
    worst = std::max(worst, ws[3].distance(s1[i], s2[i]));
  }
  return worst;
}

std::vector<VertexId> reversed(std::vector<VertexId> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

}  // namespace

TriangleMeasurement measure_triangle(CuspedSpace const& cs, VertexId a, VertexId b, VertexId c,
                                     std::vector<std::int32_t> const& da,
                                     std::vector<std::int32_t> const& db,
                                     std::vector<std::int32_t> const& dc, Workspace& ws) {
  auto const& g = cs.graph();
  TriangleMeasurement m;
  m.a = a;
  m.b = b;
  m.c = c;
  m.sides[0] = trace_path(g, da, a, b);
  m.sides[1] = trace_path(g, db, b, c);
  m.sides[2] = trace_path(g, dc, c, a);
  auto const& ab = m.sides[0];
  auto const& bc = m.sides[1];
  auto const& ca = m.sides[2];

  m.slimness = std::max({side_slimness(ws, ab, bc, ca), side_slimness(ws, bc, ca, ab),
                         side_slimness(ws, ca, ab, bc)});

  auto ga = gromov_product(da[b], da[c], db[c]).floor();  // (b,c)_a
  auto gb = gromov_product(db[a], db[c], da[c]).floor();  // (a,c)_b
  auto gc = gromov_product(dc[a], dc[b], da[b]).floor();  // (a,b)_c
  auto ac = reversed(ca);
  auto ba = reversed(ab);
  auto cb = reversed(bc);
  m.i_c = ab[static_cast<std::size_t>(ga)];
  m.i_b = ac[static_cast<std::size_t>(ga)];
  m.i_a = bc[static_cast<std::size_t>(gb)];
  m.thinness = std::max({corner_thinness(ws, ab, ac, ga), corner_thinness(ws, bc, ba, gb),
                         corner_thinness(ws, ca, cb, gc)});
  return m;
}

TriangleMeasurement measure_triangle(CuspedSpace const& cs, VertexId a, VertexId b, VertexId c) {
  if (a == b || b == c || a == c) {
    fail(ErrorKind::invalid_argument, "triangle vertices must be distinct");
  }
  Workspace ws(cs.graph());
  auto const& da = ws[0].run(a);
  auto const& db = ws[1].run(b);
  auto const& dc = ws[2].run(c);
  return measure_triangle(cs, a, b, c, da, db, dc, ws);
}

DeltaEstimate estimate_delta(CuspedSpace const& cs, DeltaOptions const& options) {
  if (options.samples == 0) fail(ErrorKind::invalid_argument, "estimate_delta needs samples >= 1");
  std::size_t n = options.samples;
  std::vector<std::optional<TriangleRecord>> results(n);
  std::vector<std::size_t> attempts(n, 0);
  std::vector<std::size_t> flagged(n, 0);
  std::vector<std::unique_ptr<Workspace>> workspaces;
  std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, n));
  for (std::size_t w = 0; w < jobs; ++w) workspaces.push_back(std::make_unique<Workspace>(cs.graph()));

  auto const pool = cs.interior_vertices(options.interior_radius ? options.interior_radius
                                                                  : cs.radius() / 2);
  if (pool.size() < 3) fail(ErrorKind::invalid_argument, "estimate_delta: fewer than 3 interior vertices");
  parallel_for(n, jobs, [&](std::size_t i, std::size_t worker) {
    Workspace& ws = *workspaces[worker];
    Rng rng(options.seed, i);
    for (std::size_t attempt = 0; attempt < options.attempts_per_sample; ++attempt) {
      ++attempts[i];
      VertexId a = pool[rng.uniform_index(pool.size())];
      VertexId b = pool[rng.uniform_index(pool.size())];
      VertexId c = pool[rng.uniform_index(pool.size())];
      if (a == b || b == c || a == c) continue;
      auto const& da = ws[0].run(a);
      if (da[b] < options.min_separation || da[c] < options.min_separation) continue;
      auto const& db = ws[1].run(b);
      if (db[c] < options.min_separation) continue;
      auto const& dc = ws[2].run(c);
      if (cs.suspect(a, b, da, db) || cs.suspect(b, c, db, dc) || cs.suspect(a, c, da, dc)) {
        ++flagged[i];
        continue;
      }
      auto m = measure_triangle(cs, a, b, c, da, db, dc, ws);
      results[i] = TriangleRecord{a, b, c, m.slimness, m.thinness, flagged[i]};
      return;
    }
  });

  DeltaEstimate est;
  std::size_t flagged_total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    est.attempts += attempts[i];
    flagged_total += flagged[i];
    if (!results[i]) continue;
    auto const& r = *results[i];
    ++est.samples;
    est.max_slimness = std::max(est.max_slimness, r.slimness);
    est.max_thinness = std::max(est.max_thinness, r.thinness);
    ++est.histogram[r.slimness];
    est.triangles.push_back(r);
  }
  est.flag_fraction =
      est.attempts == 0 ? 0.0 : static_cast<double>(flagged_total) / static_cast<double>(est.attempts);
  if (est.samples < n) {
    fail(ErrorKind::sampling_starved, "estimate_delta achieved " + std::to_string(est.samples) +
                                          " of " + std::to_string(n) + " triangles");
  }
  return est;
}

}  // namespace cusplab
