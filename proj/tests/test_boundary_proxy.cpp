#include <gtest/gtest.h>

#include "cusplab/boundary_proxy.hpp"
#include "cusplab/coarse_geometry.hpp"
#include "cusplab/error.hpp"
#include "oracle.hpp"

using namespace cusplab;

namespace {

Presentation torus() { return Presentation(2, {{parse_word("abAB")}}); }

}  // namespace

TEST(BoundaryProxy, ZeroThresholdSeparatesFirstLetters) {
  CuspedSpace cs(Presentation::free_group(2), 5, 1);
  ProxySampleOptions o;
  o.count = 2;
  o.threshold = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto s = sample_proxies(cs, o, seed);
    ASSERT_EQ(s.proxies.size(), 2u);
    EXPECT_NE(s.proxies[0].word[0], s.proxies[1].word[0]);
    EXPECT_EQ(s.products[0][1], HalfInt{});
  }
}

TEST(BoundaryProxy, EmptyRequest) {
  CuspedSpace cs(Presentation::free_group(2), 4, 1);
  ProxySampleOptions o;
  o.count = 0;
  auto s = sample_proxies(cs, o, 1);
  EXPECT_TRUE(s.proxies.empty());
  EXPECT_EQ(s.threshold, 1);
}

TEST(BoundaryProxy, ProductsMatchRecomputation) {
  CuspedSpace cs(Presentation::free_group(2), 6, 1);
  ProxySampleOptions o;
  o.count = 30;
  auto s = sample_proxies(cs, o, 7);
  ASSERT_EQ(s.proxies.size(), 30u);
  for (std::size_t i = 0; i < 30; ++i) {
    EXPECT_EQ(s.proxies[i].word.size(), 6u);
    for (std::size_t j = 0; j < 30; ++j) {
      if (i == j) continue;
      auto expected = oracle::common_prefix(s.proxies[i].word.str(), s.proxies[j].word.str());
      EXPECT_EQ(s.products[i][j], HalfInt::from_int(static_cast<std::int64_t>(expected)));
      EXPECT_LE(s.products[i][j].twice(), 2 * s.threshold);
    }
  }
}

TEST(BoundaryProxy, DeterministicForASeed) {
  CuspedSpace cs(torus(), 6, 3);
  ProxySampleOptions o;
  o.count = 4;
  o.parabolic = 2;
  auto a = sample_proxies(cs, o, 99);
  auto b = sample_proxies(cs, o, 99);
  EXPECT_EQ(a.proxies, b.proxies);
  EXPECT_EQ(a.products, b.products);
  EXPECT_TRUE(a.proxies[2].parabolic());
  EXPECT_LE(a.proxies[2].word.size(), 3u);
}

TEST(BoundaryProxy, StringRoundTrip) {
  CuspedSpace cs(torus(), 6, 3);
  ProxySampleOptions o;
  o.count = 6;
  o.parabolic = 3;
  auto s = sample_proxies(cs, o, 4);
  for (auto const& p : s.proxies) {
    auto q = parse_proxy(cs, p.str());
    EXPECT_EQ(q, p);
    EXPECT_EQ(q.realization, p.realization);
  }
  EXPECT_THROW((void)parse_proxy(cs, "x:ab"), Error);
  EXPECT_THROW((void)parse_proxy(cs, "c:ab"), Error);  // not on the sphere
}

TEST(BoundaryProxy, ParabolicRealizationIsDeep) {
  CuspedSpace cs(torus(), 6, 3);
  auto h = cs.horoball_of(cs.vertex(Word{}), 0);
  auto p = parabolic_proxy(cs, h);
  EXPECT_EQ(cs.info(p.realization).level, 3u);
  EXPECT_EQ(p.coset, cs.horoballs()[h].coset);
}

TEST(BoundaryProxy, Extension) {
  CuspedSpace small(torus(), 5, 3);
  CuspedSpace large(torus(), 7, 3);
  auto c = conical_proxy(small, parse_word("abbAB"));
  auto e = extend_proxy(large, c);
  EXPECT_EQ(e.word.str(), "abbABBB");
  auto h = small.horoball_of(small.vertex(Word{}), 0);
  auto p = extend_proxy(large, parabolic_proxy(small, h));
  EXPECT_EQ(p.coset, small.horoballs()[h].coset);
  try {
    (void)extend_proxy(small, conical_proxy(large, parse_word("aaaaaaa")));
    FAIL();
  } catch (Error const& err) {
    EXPECT_EQ(err.kind(), ErrorKind::extension);
  }
}

TEST(BoundaryProxy, ProxyGeodesicTrim) {
  CuspedSpace cs(Presentation::free_group(2), 5, 1);
  DistanceOracle oracle(cs);
  auto p = conical_proxy(cs, parse_word("aaaaa"));
  auto q = conical_proxy(cs, parse_word("bbbbb"));
  auto path = proxy_geodesic(oracle, p, q, 2.0);
  EXPECT_EQ(path.path.size(), 11u);
  EXPECT_EQ(path.trim, 2u);
  EXPECT_EQ(path.trimmed().size(), 7u);
  EXPECT_THROW((void)proxy_geodesic(oracle, p, p, 2.0), Error);
}

TEST(BoundaryProxy, StabilizationOfTreeProducts) {
  CuspedSpace small(Presentation::free_group(2), 5, 1);
  CuspedSpace large(Presentation::free_group(2), 7, 1);
  ProxySampleOptions o;
  o.count = 2;
  std::vector<std::vector<BoundaryProxy>> tuples;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) tuples.push_back(sample_proxies(small, o, seed).proxies);
  auto report = stabilization_check(small, large, tuples, [](DistanceOracle& oracle, auto const& t) {
    VertexId a = t[0].realization, b = t[1].realization;
    return HalfInt::from_twice(oracle.from(0)[a] + oracle.from(0)[b] - oracle(a, b)).value();
  });
  EXPECT_EQ(report.tuples, 10u);
  EXPECT_EQ(report.max_drift, 0.0);
}
