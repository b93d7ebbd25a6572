#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "cusplab/error.hpp"
#include "cusplab/presentation.hpp"
#include "oracle.hpp"

using namespace cusplab;

namespace {

Presentation torus() { return Presentation(2, {{parse_word("abAB")}}); }

}  // namespace

TEST(Presentation, CyclicForm) {
  auto f = cyclic_form(parse_word("bAbaB"));
  EXPECT_EQ(f.conjugator.str(), "bA");
  EXPECT_EQ(f.core.str(), "b");
  auto k = cyclic_form(parse_word("bAB"));
  EXPECT_EQ(k.conjugator.str(), "b");
  EXPECT_EQ(k.core.str(), "A");
  auto g = cyclic_form(parse_word("abAB"));
  EXPECT_TRUE(g.conjugator.empty());
}

TEST(Presentation, PrimitiveRoot) {
  auto [root, m] = primitive_root(parse_word("abababab"));
  EXPECT_EQ(root.str(), "ab");
  EXPECT_EQ(m, 4);
  auto [r2, m2] = primitive_root(parse_word("aab"));
  EXPECT_EQ(r2.str(), "aab");
  EXPECT_EQ(m2, 1);
}

TEST(Presentation, PowerExponentMatchesOracle) {
  Word h = parse_word("bAbaB");  // conjugate of a cyclically reduced word
  for (long k = -5; k <= 5; ++k) {
    auto w = power(h, k);
    auto got = power_exponent(w, h);
    ASSERT_TRUE(got.has_value()) << k;
    EXPECT_EQ(*got, k);
  }
  for (auto const& w : oracle::ball(2, 5)) {
    auto got = power_exponent(parse_word(w), h);
    auto expected = oracle::power_of(w, "bAbaB", 6);
    EXPECT_EQ(got, expected) << w;
  }
}

TEST(Presentation, CosetIdExamples) {
  auto p = torus();
  Word comm = parse_word("abAB");
  auto id_e = coset_id(p, Word{}, 0, 8);
  EXPECT_EQ(coset_id(p, power(comm, 2), 0, 8), id_e);
  EXPECT_EQ(coset_id(p, parse_word("a"), 0, 8).representative.str(), "a");
  EXPECT_EQ(coset_id(p, multiply(parse_word("b"), comm), 0, 8), coset_id(p, parse_word("b"), 0, 8));
}

TEST(Presentation, CosetIdIsShortlexLeastMember) {
  auto p = torus();
  std::size_t R = 6;
  auto words = oracle::ball(2, R);
  for (std::size_t i = 0; i < words.size(); i += 7) {
    auto const& g = words[i];
    std::string best = g;
    for (auto const& w : words) {
      if (oracle::power_of(oracle::times(oracle::inverse(g), w), "abAB", 5) &&
          oracle::shortlex_less(w, best)) {
        best = w;
      }
    }
    EXPECT_EQ(coset_id(p, parse_word(g), 0, R).representative.str(), best) << g;
  }
}

TEST(Presentation, CosetOffset) {
  auto p = torus();
  auto off = p.coset_offset(parse_word("b"), parse_word("babAB"), 0);
  ASSERT_TRUE(off.has_value());
  EXPECT_EQ(*off, 1);
  EXPECT_FALSE(p.coset_offset(parse_word("b"), parse_word("a"), 0).has_value());
}

TEST(Presentation, JsonRoundTrip) {
  auto j = nlohmann::json::parse(R"({"rank": 2, "peripherals": ["abAB", ["aa", "aaa"]]})");
  auto p = Presentation::from_json(j);
  ASSERT_EQ(p.peripherals().size(), 2u);
  EXPECT_EQ(p.peripheral_generator(1).str(), "a");  // <a^2, a^3> = <a>
  EXPECT_EQ(Presentation::from_json(p.to_json()), p);
}

TEST(Presentation, NonCyclicPeripheralRejected) {
  try {
    Presentation(2, {{parse_word("a"), parse_word("b")}});
    FAIL() << "expected unsupported-peripheral";
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported_peripheral);
  }
}

TEST(Presentation, BadJsonIsParseError) {
  try {
    Presentation::from_json(nlohmann::json::parse(R"({"peripherals": []})"));
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse);
  }
}
