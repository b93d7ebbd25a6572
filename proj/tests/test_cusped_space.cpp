#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "cusplab/cusped_space.hpp"
#include "cusplab/error.hpp"
#include "cusplab/random.hpp"
#include "oracle.hpp"

using namespace cusplab;

namespace {

Presentation torus() { return Presentation(2, {{parse_word("abAB")}}); }

// Oracle vertex for a library vertex.
int oracle_vertex(oracle::Cusped const& o, CuspedSpace const& cs, VertexId v) {
  auto info = cs.info(v);
  auto w = cs.ball().word(info.ball_vertex).str();
  if (info.level == 0) return o.base.at(w);
  return o.horo.at({o.coset_of.at(w), w, static_cast<int>(info.level)});
}

}  // namespace

TEST(CuspedSpace, MatchesDefinitionOracle) {
  std::size_t R = 5, D = 3;
  CuspedSpace cs(torus(), R, D);
  oracle::Cusped o(2, "abAB", R, D);
  ASSERT_EQ(cs.size(), o.g.adj.size());
  ASSERT_EQ(cs.horoballs().size(), o.cosets.size());
  EXPECT_EQ(cs.graph().edge_count() * 2,
            [&] {
              std::size_t s = 0;
              for (auto const& a : o.g.adj) s += a.size();
              return s;
            }());
  std::vector<int> to_oracle(cs.size());
  for (VertexId v = 0; v < cs.size(); ++v) to_oracle[v] = oracle_vertex(o, cs, v);
  Rng rng(2);
  for (int i = 0; i < 25; ++i) {
    auto s = static_cast<VertexId>(rng.uniform_index(cs.size()));
    auto expected = o.g.bfs(to_oracle[s]);
    Bfs bfs(cs.graph());
    auto const& got = bfs.run(s);
    for (VertexId v = 0; v < cs.size(); ++v) ASSERT_EQ(got[v], expected[to_oracle[v]]) << s << "->" << v;
  }
}

TEST(CuspedSpace, IdentityCosetHoroball) {
  CuspedSpace cs(torus(), 4, 1);
  auto h = cs.find_horoball(CosetId{0, Word{}});
  ASSERT_TRUE(h.has_value());
  auto e = cs.vertex(Word{});
  EXPECT_TRUE(cs.in_horoball(e, *h));
  auto pos = cs.horoballs()[*h].rep_position;
  VertexId top = cs.horo_vertex(*h, pos, 1);
  EXPECT_EQ(cs.info(top).level, 1u);
  EXPECT_EQ(cs.dist(e, top), 1);
}

TEST(CuspedSpace, SmallDistances) {
  CuspedSpace cs(torus(), 6, 3);
  auto e = cs.vertex(Word{});
  auto h = cs.horoball_of(e, 0);
  VertexId e2 = cs.horo_vertex(h, cs.horoballs()[h].rep_position, 2);
  EXPECT_EQ(cs.dist(e, e), 0);
  EXPECT_EQ(cs.dist(e, e2), 2);
  auto a4 = cs.vertex(parse_word("aaaa"));
  auto b4 = cs.vertex(parse_word("bbbb"));
  EXPECT_LE(cs.dist(a4, b4), 8);
  oracle::Cusped o(2, "abAB", 6, 3);
  EXPECT_EQ(cs.dist(a4, b4), o.g.bfs(o.base.at("aaaa"))[o.base.at("bbbb")]);
}

TEST(CuspedSpace, EveryCosetVertexInExactlyOneHoroballPerPeripheral) {
  CuspedSpace cs(torus(), 6, 2);
  std::vector<int> seen(cs.ball().size(), 0);
  for (std::size_t h = 0; h < cs.horoballs().size(); ++h) {
    for (VertexId v : cs.coset_vertices(h)) {
      ++seen[v];
      EXPECT_EQ(cs.horoball_of(v, 0), h);
    }
  }
  for (int s : seen) EXPECT_EQ(s, 1);
}

TEST(CuspedSpace, MetricAxiomsOnSamples) {
  CuspedSpace cs(torus(), 7, 3);
  Rng rng(9);
  Bfs ba(cs.graph()), bb(cs.graph());
  for (int i = 0; i < 30; ++i) {
    auto a = static_cast<VertexId>(rng.uniform_index(cs.size()));
    auto b = static_cast<VertexId>(rng.uniform_index(cs.size()));
    auto const& da = ba.run(a);
    auto const& db = bb.run(b);
    EXPECT_EQ(da[b], db[a]);
    for (int j = 0; j < 50; ++j) {
      auto c = static_cast<VertexId>(rng.uniform_index(cs.size()));
      EXPECT_LE(da[b], da[c] + db[c]);
    }
  }
}

TEST(CuspedSpace, GeodesicsAndDag) {
  CuspedSpace cs(torus(), 6, 3);
  auto u = cs.vertex(parse_word("aab"));
  auto v = cs.vertex(parse_word("BBa"));
  auto path = cs.geodesic(u, v);
  ASSERT_EQ(static_cast<std::int32_t>(path.size()) - 1, cs.dist(u, v));
  for (std::size_t i = 0; i + 1 < path.size(); ++i) EXPECT_TRUE(cs.graph().adjacent(path[i], path[i + 1]));
  auto dag = cs.all_geodesics_dag(u, v);
  EXPECT_EQ(dag.length, cs.dist(u, v));
  for (VertexId p : path) EXPECT_TRUE(dag.contains(p));
  Bfs bu(cs.graph()), bv(cs.graph());
  auto const& du = bu.run(u);
  auto const& dv = bv.run(v);
  for (VertexId w = 0; w < cs.size(); ++w) EXPECT_EQ(dag.contains(w), du[w] + dv[w] == dag.length);
  auto single = cs.all_geodesics_dag(u, u);
  EXPECT_EQ(single.vertices, std::vector<VertexId>{u});
}

TEST(CuspedSpace, EntryExitOnSet) {
  std::vector<VertexId> path{1, 2, 3, 4, 5};
  std::vector<VertexId> none{7, 9};
  auto ee = entry_exit_on_set(path, none);
  EXPECT_FALSE(ee.entry.has_value());
  EXPECT_FALSE(ee.exit.has_value());
  std::vector<VertexId> one{3};
  ee = entry_exit_on_set(path, one);
  EXPECT_EQ(*ee.entry, 3u);
  EXPECT_EQ(*ee.exit, 3u);
  std::vector<VertexId> crossing{2, 3, 4};
  ee = entry_exit_on_set(path, crossing);
  EXPECT_EQ(*ee.entry, 2u);
  EXPECT_EQ(*ee.exit, 4u);
}

TEST(CuspedSpace, DefaultDepth) {
  EXPECT_EQ(depth_for_diameter(1), 1u);
  EXPECT_EQ(depth_for_diameter(8), 4u);
  EXPECT_EQ(depth_for_diameter(9), 5u);
  CuspedSpace cs(torus(), 6, 0);
  std::int64_t diam = 0;
  for (auto const& h : cs.horoballs()) {
    diam = std::max(diam, (h.exponents.back() - h.exponents.front()) * h.step);
  }
  EXPECT_EQ(cs.depth(), depth_for_diameter(diam));
}

TEST(CuspedSpace, SuspectFlagsFollowFrontier) {
  CuspedSpace cs(Presentation::free_group(2), 6, 1);
  auto e = cs.vertex(Word{});
  auto ab = cs.vertex(parse_word("ab"));
  EXPECT_FALSE(cs.dist_checked(e, ab).suspect);
  // The unique geodesic a^6 -> a^6 b passes through no other vertex.
  auto a6 = cs.vertex(power(parse_word("a"), 6));
  auto a5b = cs.vertex(parse_word("aaaaab"));
  auto m = cs.dist_checked(a6, a5b);
  EXPECT_EQ(m.value, 2);
  EXPECT_FALSE(m.suspect);
  auto a5 = cs.vertex(power(parse_word("a"), 5));
  EXPECT_FALSE(cs.dist_checked(e, a5).suspect);
  // Two sphere endpoints joined through an interior vertex.
  auto m2 = cs.dist_checked(a5b, cs.vertex(parse_word("aaaaaB")));
  EXPECT_EQ(m2.value, 2);
  EXPECT_FALSE(m2.suspect);
  // Tree geodesics only pass through shorter prefixes.
  auto a4b = cs.vertex(parse_word("aaaab"));
  auto mid = cs.dist_checked(a4b, a5b);
  EXPECT_EQ(mid.value, 3);
  EXPECT_FALSE(mid.suspect);

  CuspedSpace cusped(torus(), 6, 2);
  std::size_t deepest = 0;
  for (VertexId v : cusped.frontier_vertices()) {
    EXPECT_TRUE(cusped.frontier(v));
    if (cusped.info(v).level == cusped.depth()) ++deepest;
    if (cusped.is_base(v)) {
      EXPECT_EQ(cusped.word(v).size(), 6u);
    }
  }
  EXPECT_GT(deepest, 0u);
}

TEST(CuspedSpace, MonotoneStabilityOfUnflaggedDistances) {
  CuspedSpace small(torus(), 6, 3);
  CuspedSpace large(torus(), 8, 4);
  auto pool = small.interior_vertices(3);
  Rng rng(4);
  Workspace ws(small.graph());
  Bfs big(large.graph());
  std::size_t checked = 0;
  for (int i = 0; i < 200; ++i) {
    VertexId u = pool[rng.uniform_index(pool.size())];
    VertexId v = pool[rng.uniform_index(pool.size())];
    auto const& du = ws[0].run(u);
    auto const& dv = ws[1].run(v);
    if (small.suspect(u, v, du, dv)) continue;
    auto lu = large.vertex(small.word(u));
    auto lv = large.vertex(small.word(v));
    if (small.info(u).level != 0 || small.info(v).level != 0) continue;
    EXPECT_EQ(du[v], big.distance(lu, lv));
    ++checked;
  }
  EXPECT_GT(checked, 10u);
}

TEST(CuspedSpace, ManifestAndExport) {
  CuspedSpace cs(torus(), 5, 2);
  auto m = cs.manifest();
  EXPECT_EQ(m["R"], 5);
  EXPECT_EQ(m["D"], 2);
  EXPECT_EQ(m["vertex_count"], cs.size());
  EXPECT_EQ(m["horoballs"].size(), cs.horoballs().size());
  std::size_t low = 0;
  for (auto const& h : cs.horoballs()) low += h.base.size() < 3 ? 1 : 0;
  std::size_t flagged = 0;
  for (auto const& h : m["horoballs"]) flagged += h["low_confidence"].get<bool>() ? 1 : 0;
  EXPECT_EQ(flagged, low);
  auto dir = std::filesystem::temp_directory_path() / "cusplab_export_test";
  std::filesystem::create_directories(dir);
  cs.export_to((dir / "space").string());
  std::ifstream in(dir / "space.json");
  EXPECT_EQ(nlohmann::json::parse(in), m);
  std::ifstream edges(dir / "space.edges");
  std::size_t n = 0;
  edges >> n;
  EXPECT_EQ(n, cs.size());
  std::filesystem::remove_all(dir);
}

TEST(CuspedSpace, BudgetExceeded) {
  SpaceOptions o;
  o.max_vertices = 1000;
  try {
    CuspedSpace cs(torus(), 6, 4, o);
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::budget_exceeded);
  }
}
