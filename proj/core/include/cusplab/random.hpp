#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cusplab {

// SplitMix64 step, used to derive independent per-index seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Seeded generator whose output is identical across standard libraries:
// the std distributions are not, so only the raw engine is used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(mix_seed(seed, stream)) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n) by rejection. n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  template <class T>
  T const& pick(std::vector<T> const& v) {
    return v[uniform_index(v.size())];
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cusplab
