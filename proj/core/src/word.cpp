#include "cusplab/word.hpp"

#include <algorithm>
#include <cctype>

#include "cusplab/error.hpp"

namespace cusplab {

char Generator::to_char() const {
  char base = static_cast<char>('a' + index());
  return inverse() ? static_cast<char>(std::toupper(base)) : base;
}

Generator Generator::from_char(char c) {
  if (c >= 'a' && c <= 'z') return Generator(static_cast<std::uint8_t>(c - 'a'), false);
  if (c >= 'A' && c <= 'Z') return Generator(static_cast<std::uint8_t>(c - 'A'), true);
  fail(ErrorKind::parse, std::string("bad letter '") + c + "'");
}

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.letters_.push_back(it->inv());
  }
  return out;
}

Word Word::prefix(std::size_t n) const {
  Word out;
  n = std::min(n, letters_.size());
  out.letters_.assign(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (auto g : letters_) s.push_back(g.to_char());
  return s;
}

void Word::push(Generator g) {
  if (!letters_.empty() && letters_.back() == g.inv()) {
    letters_.pop_back();
  } else {
    letters_.push_back(g);
  }
}

std::strong_ordering operator<=>(Word const& u, Word const& v) {
  if (auto c = u.size() <=> v.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(u.letters_.begin(), u.letters_.end(),
                                                v.letters_.begin(), v.letters_.end());
}

Word reduce(std::vector<Generator> const& letters, std::size_t rank) {
  Word out;
  out.letters_.reserve(letters.size());
  for (auto g : letters) {
    if (rank != kNoRankCheck && g.index() >= rank) {
      fail(ErrorKind::presentation_mismatch,
           "generator index " + std::to_string(g.index()) + " out of range for rank " +
               std::to_string(rank));
    }
    out.push(g);
  }
  return out;
}

Word multiply(Word const& u, Word const& v) {
  Word out = u;
  for (auto g : v) out.push(g);
  return out;
}

Word power(Word const& w, long k) {
  Word base = k < 0 ? w.inverse() : w;
  Word out;
  for (long i = 0; i < (k < 0 ? -k : k); ++i) out = multiply(out, base);
  return out;
}

Word parse_word(std::string_view text, std::size_t rank) {
  if (text == "1") return {};
  std::vector<Generator> letters;
  letters.reserve(text.size());
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '.' || c == '*') continue;
    letters.push_back(Generator::from_char(c));
  }
  return reduce(letters, rank);
}

std::size_t common_prefix_length(Word const& u, Word const& v) {
  std::size_t n = std::min(u.size(), v.size());
  std::size_t i = 0;
  while (i < n && u[i] == v[i]) ++i;
  return i;
}

}  // namespace cusplab
