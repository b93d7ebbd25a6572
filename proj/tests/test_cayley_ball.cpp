#include <gtest/gtest.h>

#include <sstream>

#include "cusplab/cayley_ball.hpp"
#include "cusplab/error.hpp"
#include "cusplab/random.hpp"
#include "oracle.hpp"

using namespace cusplab;

TEST(CayleyBall, SmallSizes) {
  CayleyBall b1(Presentation::free_group(2), 1);
  EXPECT_EQ(b1.size(), 5u);
  EXPECT_EQ(b1.graph().edge_count(), 4u);
  CayleyBall b2(Presentation::free_group(2), 2);
  EXPECT_EQ(b2.size(), 17u);
  EXPECT_EQ(b2.size(), oracle::ball(2, 2).size());
  CayleyBall b4(Presentation::free_group(4), 1);
  EXPECT_EQ(b4.size(), 9u);
}

TEST(CayleyBall, ContainsExactlyTheReducedWords) {
  std::size_t R = 6;
  CayleyBall b(Presentation::free_group(2), R);
  auto words = oracle::ball(2, R);
  ASSERT_EQ(b.size(), words.size());
  EXPECT_EQ(b.size(), free_ball_size(2, R));
  for (auto const& w : words) {
    auto v = b.find(parse_word(w));
    ASSERT_TRUE(v.has_value()) << w;
    EXPECT_EQ(b.word(*v).str(), w);
  }
}

TEST(CayleyBall, IdsAreShortlexOrdered) {
  CayleyBall b(Presentation::free_group(2), 5);
  for (VertexId v = 1; v < b.size(); ++v) EXPECT_LT(b.word(v - 1), b.word(v));
  EXPECT_TRUE(b.word(0).empty());
}

TEST(CayleyBall, InteriorDegree) {
  CayleyBall b(Presentation::free_group(3), 4);
  for (VertexId v = 0; v < b.size(); ++v) {
    if (b.length(v) < b.radius()) {
      EXPECT_EQ(b.graph().degree(v), 6u);
    }
  }
  for (VertexId v : b.sphere()) EXPECT_EQ(b.graph().degree(v), 1u);
}

TEST(CayleyBall, DistanceExamples) {
  std::size_t R = 6;
  CayleyBall b(Presentation::free_group(2), R);
  auto e = b.vertex(Word{});
  auto d1 = b.graph_distance(e, b.vertex(parse_word("ab")));
  EXPECT_EQ(d1.value, 2);
  EXPECT_FALSE(d1.suspect);
  EXPECT_EQ(b.graph_distance(b.vertex(parse_word("a")), b.vertex(parse_word("b"))).value, 2);
  auto far = b.graph_distance(b.vertex(power(parse_word("a"), R)), b.vertex(power(parse_word("b"), R)));
  EXPECT_EQ(far.value, static_cast<std::int32_t>(2 * R));
  EXPECT_TRUE(far.suspect);
}

TEST(CayleyBall, GraphDistanceMatchesWordMetric) {
  std::size_t R = 7;
  CayleyBall b(Presentation::free_group(2), R);
  Rng rng(5);
  for (int i = 0; i < 400; ++i) {
    auto u = static_cast<VertexId>(rng.uniform_index(b.size()));
    auto v = static_cast<VertexId>(rng.uniform_index(b.size()));
    auto d = b.graph_distance(u, v);
    auto expected = oracle::dist(b.word(u).str(), b.word(v).str());
    EXPECT_EQ(b.word_distance(u, v), expected);
    // In a tree the truncated ball never shortens or lengthens a path.
    EXPECT_EQ(static_cast<std::size_t>(d.value), expected);
    EXPECT_EQ(d.suspect, b.length(u) + b.length(v) > R);
  }
}

TEST(CayleyBall, BudgetExceeded) {
  BallOptions o;
  o.max_vertices = 100;
  try {
    CayleyBall b(Presentation::free_group(2), 6, o);
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::budget_exceeded);
  }
}

TEST(CayleyBall, EdgeListExport) {
  CayleyBall b(Presentation::free_group(2), 2);
  std::ostringstream out;
  b.write_edge_list(out);
  std::istringstream in(out.str());
  std::size_t n = 0, lines = 0;
  in >> n;
  EXPECT_EQ(n, 17u);
  VertexId u, v;
  while (in >> u >> v) {
    EXPECT_TRUE(b.graph().adjacent(u, v));
    ++lines;
  }
  EXPECT_EQ(lines, b.graph().edge_count());
}
