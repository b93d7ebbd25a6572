#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "cusplab/error.hpp"
#include "cusplab/morphisms.hpp"
#include "cusplab/random.hpp"
#include "oracle.hpp"

using namespace cusplab;

namespace {

Presentation torus() { return Presentation(2, {{parse_word("abAB")}}); }

}  // namespace

TEST(Morphisms, DehnTwistFixesThePeripheral) {
  auto p = torus();
  auto f = dehn_twist_map(p);
  EXPECT_EQ(apply(f, parse_word("abAB")).str(), "abAB");
  EXPECT_EQ(apply(f, parse_word("b")).str(), "ba");
  EXPECT_EQ(apply(f, parse_word("a")).str(), "a");
  EXPECT_EQ(apply(f, Word{}), Word{});
}

TEST(Morphisms, HomomorphismAgainstOracle) {
  auto p = torus();
  auto f = dehn_twist_map(p);
  auto img = [](std::string const& w) {
    std::string out;
    for (char c : w) {
      out = oracle::times(out, c == 'a' ? "a" : c == 'A' ? "A" : c == 'b' ? "ba" : "AB");
    }
    return out;
  };
  for (auto const& w : oracle::ball(2, 5)) EXPECT_EQ(apply(f, parse_word(w)).str(), img(w));
}

TEST(Morphisms, InverseComposesToIdentity) {
  auto p = torus();
  auto f = dehn_twist_map(p);
  auto g = dehn_twist_map(p, -1);
  auto fg = compose(f, g);
  auto gf = compose(g, f);
  for (auto const& w : oracle::ball(2, 4)) {
    EXPECT_EQ(apply(fg, parse_word(w)).str(), w);
    EXPECT_EQ(apply(gf, parse_word(w)).str(), w);
  }
  auto id = GeneratorMap::identity(p);
  EXPECT_EQ(apply(id, parse_word("abba")).str(), "abba");
}

TEST(Morphisms, PeripheralCorrespondenceIsChecked) {
  auto p = torus();
  // Swapping the generators sends abAB to its inverse.
  EXPECT_NO_THROW(GeneratorMap(p, p, {parse_word("b"), parse_word("a")}, {{0, 0, -1, Word{}}}));
  try {
    GeneratorMap(p, p, {parse_word("b"), parse_word("a")}, {{0, 0, 1, Word{}}});
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::correspondence);
  }
}

TEST(Morphisms, JsonRoundTrip) {
  auto p = torus();
  auto f = dehn_twist_map(p);
  auto g = GeneratorMap::from_json(f.to_json(), p, p);
  EXPECT_EQ(g.images(), f.images());
  EXPECT_EQ(g.matches().size(), 1u);
  EXPECT_THROW(GeneratorMap::from_json(nlohmann::json::parse(R"({"images": {"a": "a"}})"), p, p),
               Error);
}

TEST(Morphisms, CuspPreservation) {
  auto p = torus();
  CuspedSpace X(p, 6, 3);
  auto id = GeneratorMap::identity(p);
  EXPECT_EQ(cusp_preservation_report(id, X, X).k_hat, 0u);
  auto g = parse_word("ab");
  auto shifted = cusp_preservation_report(id.translated(g), X, X);
  EXPECT_LE(shifted.k_hat, g.size());
  EXPECT_EQ(cusp_preservation_report(dehn_twist_map(p), X, X).k_hat, 0u);
}

TEST(Morphisms, DistanceToCoset) {
  auto p = torus();
  EXPECT_EQ(distance_to_coset(p, Word{}, Word{}, 0), 0u);
  EXPECT_EQ(distance_to_coset(p, parse_word("abAB"), Word{}, 0), 0u);
  EXPECT_EQ(distance_to_coset(p, parse_word("bb"), Word{}, 0), 2u);
  EXPECT_EQ(distance_to_coset(p, parse_word("a"), Word{}, 0), 1u);
}

TEST(Morphisms, InducedProxies) {
  auto p = torus();
  CuspedSpace X(p, 5, 3);
  auto f = dehn_twist_map(p);
  auto a = induced_proxy_map(f, X, X, conical_proxy(X, parse_word("aaaaa")));
  EXPECT_EQ(a.proxy.word.str(), "aaaaa");
  EXPECT_FALSE(a.short_image);
  auto b = induced_proxy_map(f, X, X, conical_proxy(X, parse_word("bbbbb")));
  EXPECT_EQ(b.proxy.word.str(), "babab");
  auto h = X.horoball_of(X.vertex(Word{}), 0);
  auto c = induced_proxy_map(f, X, X, parabolic_proxy(X, h));
  EXPECT_TRUE(c.proxy.parabolic());
  EXPECT_EQ(c.proxy.coset, X.horoballs()[h].coset);
  // The image of baaaa cancels below the sphere.
  auto s = induced_proxy_map(dehn_twist_map(p, -1), X, X, conical_proxy(X, parse_word("baaaa")));
  EXPECT_EQ(apply(dehn_twist_map(p, -1), parse_word("baaaa")).str(), "baaa");
  EXPECT_TRUE(s.short_image);
  EXPECT_EQ(s.proxy.word.str(), "baaaa");
}

TEST(Morphisms, EnvelopeFitExamples) {
  auto f = fit_affine_envelope({{0, 0}, {1, 1}, {2, 2}});
  EXPECT_DOUBLE_EQ(f.A, 1.0);
  EXPECT_DOUBLE_EQ(f.B, 0.0);
  f = fit_affine_envelope({{0, 1}});
  EXPECT_DOUBLE_EQ(f.A, 0.0);
  EXPECT_DOUBLE_EQ(f.B, 1.0);
  f = fit_affine_envelope({{0, 0}, {2, 1}, {4, 4}});
  EXPECT_DOUBLE_EQ(f.A, 1.0);
  EXPECT_DOUBLE_EQ(f.B, 0.0);
  f = fit_affine_envelope({{0, 5}, {1, 3}, {2, 1}});
  EXPECT_DOUBLE_EQ(f.A, 0.0);
  EXPECT_DOUBLE_EQ(f.B, 5.0);
  EXPECT_THROW((void)fit_affine_envelope({}), Error);
}

TEST(Morphisms, EnvelopeDominatesEveryPoint) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<FitPoint> pts;
    auto n = 1 + rng.uniform_index(40);
    for (std::uint64_t i = 0; i < n; ++i) {
      pts.push_back({static_cast<double>(rng.uniform_index(100)) / 7.0,
                     static_cast<double>(rng.uniform_index(100)) / 3.0});
    }
    auto f = fit_affine_envelope(pts);
    EXPECT_GE(f.A, 0.0);
    EXPECT_GE(f.B, 0.0);
    EXPECT_LE(f.max_residual, 0.0);
    for (auto const& p : pts) EXPECT_LE(p.y, f.A * p.x + f.B);
  }
}

TEST(Morphisms, IdentityIsUndistorted) {
  auto p = torus();
  CuspedSpace X(p, 6, 3);
  auto id = GeneratorMap::identity(p);
  DistortionOptions o;
  o.samples = 40;
  o.delta_hat_x = o.delta_hat_y = 2.0;
  auto qm = qm_distortion_experiment(id, X, X, o, &id);
  EXPECT_LE(qm.forward.A, 1.1);
  EXPECT_LE(qm.forward.B, 4.0);
  ASSERT_TRUE(qm.inverse.has_value());
  EXPECT_EQ(qm.samples.size(), 40u);
  for (auto const& s : qm.samples) {
    EXPECT_EQ(s.x, s.y);
    EXPECT_EQ(s.source, s.image);
  }
}

TEST(Morphisms, ReconstructIdentity) {
  auto p = torus();
  CuspedSpace X(p, 6, 3);
  ReconstructionOptions o;
  o.delta_hat_x = o.delta_hat_y = 2.0;
  o.interior_radius = 2;
  for (auto mode : {ReconstructionMode::centers, ReconstructionMode::exits}) {
    o.mode = mode;
    auto r = reconstruct_qi(GeneratorMap::identity(p), X, X, o);
    EXPECT_FALSE(r.vertices.empty());
    EXPECT_EQ(r.d_hat, 0u) << to_string(mode);
    EXPECT_EQ(parse_reconstruction_mode(to_string(mode)), mode);
  }
  EXPECT_THROW((void)parse_reconstruction_mode("other"), Error);
}
