#include <gtest/gtest.h>

#include "cusplab/error.hpp"
#include "cusplab/random.hpp"
#include "cusplab/word.hpp"
#include "oracle.hpp"

using namespace cusplab;

namespace {

std::string random_letters(Rng& rng, std::size_t rank, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) {
    auto code = rng.uniform_index(2 * rank);
    s.push_back(Generator::from_code(code).to_char());
  }
  return s;
}

}  // namespace

TEST(Word, ReduceExamples) {
  EXPECT_EQ(parse_word("aA").str(), "");
  EXPECT_EQ(parse_word("bAab").str(), "bb");
  EXPECT_TRUE(multiply(parse_word("abAB"), parse_word("baBA")).empty());
}

TEST(Word, MultiplyExamples) {
  EXPECT_TRUE(multiply(parse_word("a"), parse_word("A")).empty());
  EXPECT_EQ(multiply(parse_word("ab"), parse_word("Ba")).str(), "aa");
  EXPECT_EQ(multiply(parse_word("abA"), parse_word("aB")).str(), "a");
}

TEST(Word, IdentitySpellings) {
  EXPECT_TRUE(parse_word("").empty());
  EXPECT_TRUE(parse_word("1").empty());
  EXPECT_EQ(parse_word("a . b * A").str(), "abA");
}

TEST(Word, RankCheck) {
  EXPECT_NO_THROW(parse_word("ab", 2));
  try {
    parse_word("abc", 2);
    FAIL() << "expected presentation-mismatch";
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::presentation_mismatch);
  }
}

TEST(Word, LetterOrderIsShortlex) {
  EXPECT_LT(parse_word("a"), parse_word("A"));
  EXPECT_LT(parse_word("A"), parse_word("b"));
  EXPECT_LT(parse_word("b"), parse_word("B"));
  EXPECT_LT(parse_word("B"), parse_word("aa"));
  EXPECT_LT(parse_word(""), parse_word("a"));
}

TEST(Word, ReductionMatchesOracle) {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    auto s = random_letters(rng, 3, rng.uniform_index(14));
    EXPECT_EQ(parse_word(s).str(), oracle::reduce(s)) << s;
  }
}

TEST(Word, GroupLaws) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    auto u = parse_word(random_letters(rng, 2, 8));
    auto v = parse_word(random_letters(rng, 2, 8));
    auto w = parse_word(random_letters(rng, 2, 8));
    EXPECT_EQ(multiply(multiply(u, v), w), multiply(u, multiply(v, w)));
    EXPECT_TRUE(multiply(u, u.inverse()).empty());
    EXPECT_EQ(multiply(u, v).inverse(), multiply(v.inverse(), u.inverse()));
    EXPECT_EQ(parse_word(u.str()), u);
  }
}

TEST(Word, PowersMatchOracle) {
  for (auto const* s : {"abAB", "ab", "aab", "abA"}) {
    for (long k = -4; k <= 4; ++k) {
      EXPECT_EQ(power(parse_word(s), k).str(), oracle::pow(s, k)) << s << "^" << k;
    }
  }
}

TEST(Word, ShortlexMatchesOracle) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    auto u = oracle::reduce(random_letters(rng, 2, rng.uniform_index(6)));
    auto v = oracle::reduce(random_letters(rng, 2, rng.uniform_index(6)));
    EXPECT_EQ(parse_word(u) < parse_word(v), oracle::shortlex_less(u, v)) << u << " " << v;
  }
}

TEST(Word, CommonPrefix) {
  EXPECT_EQ(common_prefix_length(parse_word("abab"), parse_word("abA")), 2u);
  EXPECT_EQ(common_prefix_length(parse_word("abab"), parse_word("abB")), 1u);
  EXPECT_EQ(common_prefix_length(parse_word("a"), parse_word("b")), 0u);
  EXPECT_EQ(parse_word("abAB").prefix(2).str(), "ab");
}
