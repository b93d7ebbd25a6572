#include <gtest/gtest.h>

#include <algorithm>

#include "cusplab/error.hpp"
#include "cusplab/hyperbolicity.hpp"
#include "cusplab/random.hpp"
#include "oracle.hpp"

using namespace cusplab;

namespace {

Presentation torus() { return Presentation(2, {{parse_word("abAB")}}); }

// Thinness straight from the definitions on an explicit graph: internal
// points by distances, thinness as the largest pairwise distance.
int brute_slimness(oracle::Graph const& g, std::vector<int> const& side_ab,
                   std::vector<int> const& side_bc, std::vector<int> const& side_ca) {
  auto to_side = [&](int v, std::vector<int> const& side) {
    auto d = g.bfs(v);
    int best = 1 << 30;
    for (int s : side) best = std::min(best, d[s]);
    return best;
  };
  int worst = 0;
  std::vector<std::vector<int> const*> sides{&side_ab, &side_bc, &side_ca};
  for (std::size_t i = 0; i < 3; ++i) {
    for (int v : *sides[i]) {
      int nearest = std::min(to_side(v, *sides[(i + 1) % 3]), to_side(v, *sides[(i + 2) % 3]));
      worst = std::max(worst, nearest);
    }
  }
  return worst;
}

}  // namespace

TEST(Hyperbolicity, GromovProductExamples) {
  CuspedSpace cs(Presentation::free_group(2), 4, 1);
  auto e = cs.vertex(Word{});
  EXPECT_EQ(gromov_product(cs, cs.vertex(parse_word("ab")), cs.vertex(parse_word("abb")), e),
            HalfInt::from_int(2));
  EXPECT_EQ(gromov_product(cs, cs.vertex(parse_word("aa")), cs.vertex(parse_word("bb")), e),
            HalfInt::from_int(0));
  EXPECT_EQ(gromov_product(3, 4, 2), HalfInt::from_twice(5));
}

TEST(Hyperbolicity, TreeProductsAreCommonPrefixes) {
  CuspedSpace cs(Presentation::free_group(2), 4, 1);
  auto e = cs.vertex(Word{});
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    auto a = static_cast<VertexId>(rng.uniform_index(cs.ball().size()));
    auto b = static_cast<VertexId>(rng.uniform_index(cs.ball().size()));
    auto expected = oracle::common_prefix(cs.word(a).str(), cs.word(b).str());
    EXPECT_EQ(gromov_product(cs, a, b, e), HalfInt::from_int(static_cast<std::int64_t>(expected)));
  }
}

TEST(Hyperbolicity, TreeTrianglesAreZeroThin) {
  CuspedSpace cs(Presentation::free_group(2), 6, 1);
  DeltaOptions o;
  o.samples = 200;
  o.seed = 5;
  auto est = estimate_delta(cs, o);
  EXPECT_EQ(est.samples, 200u);
  EXPECT_EQ(est.max_slimness, 0);
  EXPECT_EQ(est.max_thinness, 0);
  EXPECT_EQ(est.triangles.size(), 200u);
}

TEST(Hyperbolicity, TriangleSidesAreGeodesics) {
  CuspedSpace cs(torus(), 6, 3);
  auto pool = cs.interior_vertices(3);
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    VertexId a = rng.pick(pool), b = rng.pick(pool), c = rng.pick(pool);
    if (a == b || b == c || a == c) continue;
    auto t = measure_triangle(cs, a, b, c);
    EXPECT_EQ(t.sides[0].front(), a);
    EXPECT_EQ(t.sides[0].back(), b);
    EXPECT_EQ(t.sides[1].front(), b);
    EXPECT_EQ(t.sides[2].front(), c);
    EXPECT_EQ(static_cast<std::int32_t>(t.sides[0].size()) - 1, cs.dist(a, b));
    EXPECT_EQ(static_cast<std::int32_t>(t.sides[1].size()) - 1, cs.dist(b, c));
    EXPECT_EQ(static_cast<std::int32_t>(t.sides[2].size()) - 1, cs.dist(c, a));
    EXPECT_GE(t.slimness, 0);
  }
}

TEST(Hyperbolicity, SlimnessMatchesBruteForceInAHoroball) {
  // Triangles inside one horoball, measured against a graph built from the
  // definitions.
  std::size_t R = 5, D = 3;
  CuspedSpace cs(torus(), R, D);
  oracle::Cusped o(2, "abAB", R, D);
  auto to_oracle = [&](VertexId v) {
    auto info = cs.info(v);
    auto w = cs.ball().word(info.ball_vertex).str();
    if (info.level == 0) return o.base.at(w);
    return o.horo.at({o.coset_of.at(w), w, static_cast<int>(info.level)});
  };
  auto h = cs.horoball_of(cs.vertex(Word{}), 0);
  auto const& hb = cs.horoballs()[h];
  ASSERT_GE(hb.base.size(), 3u);
  VertexId a = hb.base.front();
  VertexId b = cs.horo_vertex(h, hb.rep_position, D);
  VertexId c = hb.base.back();
  auto t = measure_triangle(cs, a, b, c);
  std::array<std::vector<int>, 3> sides;
  for (std::size_t i = 0; i < 3; ++i) {
    for (VertexId v : t.sides[i]) sides[i].push_back(to_oracle(v));
  }
  EXPECT_EQ(t.slimness, brute_slimness(o.g, sides[0], sides[1], sides[2]));
}

TEST(Hyperbolicity, Errors) {
  CuspedSpace cs(torus(), 4, 2);
  DeltaOptions o;
  o.samples = 0;
  try {
    (void)estimate_delta(cs, o);
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
  }
  auto e = cs.vertex(Word{});
  EXPECT_THROW((void)measure_triangle(cs, e, e, cs.vertex(parse_word("a"))), Error);
}

TEST(Hyperbolicity, DeterministicAcrossJobs) {
  CuspedSpace cs(torus(), 6, 3);
  DeltaOptions o;
  o.samples = 40;
  o.seed = 11;
  auto one = estimate_delta(cs, o);
  o.jobs = 2;
  auto two = estimate_delta(cs, o);
  EXPECT_EQ(one.max_slimness, two.max_slimness);
  EXPECT_EQ(one.histogram, two.histogram);
  ASSERT_EQ(one.triangles.size(), two.triangles.size());
  for (std::size_t i = 0; i < one.triangles.size(); ++i) {
    EXPECT_EQ(one.triangles[i].a, two.triangles[i].a);
    EXPECT_EQ(one.triangles[i].slimness, two.triangles[i].slimness);
  }
}
