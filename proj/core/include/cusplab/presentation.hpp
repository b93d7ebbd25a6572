#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cusplab/word.hpp"

namespace cusplab {

// Decomposition h = t c t^-1 with c cyclically reduced and nonempty.
struct CyclicForm {
  Word conjugator;  // t
  Word core;        // c
};

CyclicForm cyclic_form(Word const& h);

// Shortest r with w = r^m for some m >= 1, together with m.
std::pair<Word, long> primitive_root(Word const& w);

// Returns k with w = h^k, if any. h must be nonempty.
std::optional<long> power_exponent(Word const& w, Word const& h);

struct Peripheral {
  std::vector<Word> generators;  // as supplied
  Word generator;                // single generator of the cyclic subgroup
};

class Presentation {
 public:
  Presentation(std::size_t rank, std::vector<std::vector<Word>> peripherals);

  static Presentation free_group(std::size_t rank);
  static Presentation from_json(nlohmann::json const& j);
  static Presentation load(std::string const& path);
  [[nodiscard]] nlohmann::json to_json() const;

  [[nodiscard]] std::size_t rank() const { return rank_; }
  [[nodiscard]] std::vector<Peripheral> const& peripherals() const { return peripherals_; }
  [[nodiscard]] Word const& peripheral_generator(std::size_t i) const {
    return peripherals_.at(i).generator;
  }

  [[nodiscard]] Word parse(std::string const& text) const { return parse_word(text, rank_); }

  // Exponent k with g1^-1 g2 = h_i^k, or nothing when the two elements lie
  // in different cosets of peripheral i.
  [[nodiscard]] std::optional<long> coset_offset(Word const& g1, Word const& g2,
                                                 std::size_t peripheral) const;

  friend bool operator==(Presentation const& a, Presentation const& b) {
    return a.rank_ == b.rank_ && a.peripheral_words() == b.peripheral_words();
  }

 private:
  [[nodiscard]] std::vector<std::vector<Word>> peripheral_words() const;

  std::size_t rank_;
  std::vector<Peripheral> peripherals_;
};

struct CosetId {
  std::size_t peripheral = 0;
  Word representative;

  friend bool operator==(CosetId const&, CosetId const&) = default;
  friend auto operator<=>(CosetId const& a, CosetId const& b) {
    if (auto c = a.peripheral <=> b.peripheral; c != 0) return c;
    return a.representative <=> b.representative;
  }
  [[nodiscard]] std::string str() const;
};

// The members g h^j of the coset g<h> with |g h^j| <= radius, ordered by j.
struct CosetSlice {
  std::vector<long> exponents;
  std::vector<Word> members;
};

CosetSlice coset_slice(Presentation const& p, Word const& g, std::size_t peripheral,
                       std::size_t radius);

// Canonical id: shortlex-least member of the coset inside the ball of the
// given radius. g must lie in that ball.
CosetId coset_id(Presentation const& p, Word const& g, std::size_t peripheral,
                 std::size_t radius);

}  // namespace cusplab
