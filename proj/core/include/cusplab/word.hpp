#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cusplab {

// A generator or its inverse. Codes are 2*index + inverse, which makes
// the numeric order a < A < b < B < ... the shortlex letter order.
class Generator {
 public:
  constexpr Generator() = default;
  constexpr Generator(std::uint8_t index, bool inverse)
      : code_(static_cast<std::uint8_t>(2 * index + (inverse ? 1 : 0))) {}

  static constexpr Generator from_code(std::size_t code) {
    Generator g;
    g.code_ = static_cast<std::uint8_t>(code);
    return g;
  }

  [[nodiscard]] constexpr std::size_t index() const { return code_ >> 1; }
  [[nodiscard]] constexpr bool inverse() const { return (code_ & 1) != 0; }
  [[nodiscard]] constexpr std::size_t code() const { return code_; }
  [[nodiscard]] constexpr Generator inv() const { return from_code(code_ ^ 1u); }

  [[nodiscard]] char to_char() const;
  static Generator from_char(char c);

  friend constexpr auto operator<=>(Generator, Generator) = default;

 private:
  std::uint8_t code_ = 0;
};

// Freely reduced word. Construct through reduce() or parse_word().
class Word {
 public:
  Word() = default;

  [[nodiscard]] std::size_t size() const { return letters_.size(); }
  [[nodiscard]] bool empty() const { return letters_.empty(); }
  [[nodiscard]] Generator operator[](std::size_t i) const { return letters_[i]; }
  [[nodiscard]] std::vector<Generator> const& letters() const { return letters_; }
  [[nodiscard]] auto begin() const { return letters_.begin(); }
  [[nodiscard]] auto end() const { return letters_.end(); }

  [[nodiscard]] Word inverse() const;
  [[nodiscard]] Word prefix(std::size_t n) const;
  [[nodiscard]] std::string str() const;

  // Appends g, cancelling against the last letter when they are inverse.
  void push(Generator g);

  friend bool operator==(Word const&, Word const&) = default;
  friend std::strong_ordering operator<=>(Word const& u, Word const& v);

 private:
  friend Word reduce(std::vector<Generator> const&, std::size_t);
  std::vector<Generator> letters_;
};

inline constexpr std::size_t kNoRankCheck = 0;

// Free reduction. When rank is nonzero every letter must have index < rank.
Word reduce(std::vector<Generator> const& letters, std::size_t rank = kNoRankCheck);

Word multiply(Word const& u, Word const& v);
Word power(Word const& w, long k);

// Letters are ASCII; lowercase is a generator, uppercase its inverse.
// The empty string and "1" denote the identity.
Word parse_word(std::string_view text, std::size_t rank = kNoRankCheck);

std::size_t common_prefix_length(Word const& u, Word const& v);

}  // namespace cusplab
