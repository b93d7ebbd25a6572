#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace cusplab {

// Exact multiple of 1/2, stored as twice its value.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(std::int64_t twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  static constexpr HalfInt from_int(std::int64_t v) { return from_twice(2 * v); }

  [[nodiscard]] constexpr std::int64_t twice() const { return twice_; }
  [[nodiscard]] constexpr double value() const { return static_cast<double>(twice_) / 2.0; }
  // Largest integer not above the value.
  [[nodiscard]] constexpr std::int64_t floor() const {
    return twice_ >= 0 ? twice_ / 2 : -((-twice_ + 1) / 2);
  }
  [[nodiscard]] constexpr HalfInt abs() const { return from_twice(twice_ < 0 ? -twice_ : twice_); }
  [[nodiscard]] std::string str() const;

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice_ + b.twice_); }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice_ - b.twice_); }
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;

 private:
  std::int64_t twice_ = 0;
};

// A half-integer or one of the two infinities.
class ExtendedValue {
 public:
  enum class Kind : std::uint8_t { finite, plus_infinity, minus_infinity };

  constexpr ExtendedValue() = default;
  constexpr explicit ExtendedValue(HalfInt v) : value_(v) {}
  static constexpr ExtendedValue plus_infinity() { return ExtendedValue(Kind::plus_infinity); }
  static constexpr ExtendedValue minus_infinity() { return ExtendedValue(Kind::minus_infinity); }

  [[nodiscard]] constexpr Kind kind() const { return kind_; }
  [[nodiscard]] constexpr bool finite() const { return kind_ == Kind::finite; }
  // Only meaningful for finite values.
  [[nodiscard]] constexpr HalfInt value() const { return value_; }
  [[nodiscard]] double to_double() const;
  [[nodiscard]] std::string str() const;

  friend constexpr bool operator==(ExtendedValue, ExtendedValue) = default;

 private:
  constexpr explicit ExtendedValue(Kind k) : kind_(k) {}
  Kind kind_ = Kind::finite;
  HalfInt value_;
};

}  // namespace cusplab
