#include "cusplab/numeric.hpp"

#include <limits>

namespace cusplab {

std::string HalfInt::str() const {
  std::int64_t t = twice_ < 0 ? -twice_ : twice_;
  std::string s = (twice_ < 0 ? "-" : "") + std::to_string(t / 2);
  return s + (t % 2 == 0 ? ".0" : ".5");
}

double ExtendedValue::to_double() const {
  switch (kind_) {
    case Kind::plus_infinity: return std::numeric_limits<double>::infinity();
    case Kind::minus_infinity: return -std::numeric_limits<double>::infinity();
    case Kind::finite: break;
  }
  return value_.value();
}

std::string ExtendedValue::str() const {
  switch (kind_) {
    case Kind::plus_infinity: return "+inf";
    case Kind::minus_infinity: return "-inf";
    case Kind::finite: break;
  }
  return value_.str();
}

}  // namespace cusplab
