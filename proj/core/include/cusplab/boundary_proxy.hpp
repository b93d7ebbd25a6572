#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cusplab/cusped_space.hpp"
#include "cusplab/distance_oracle.hpp"
#include "cusplab/numeric.hpp"
#include "cusplab/random.hpp"

namespace cusplab {

// Finite stand-in for a boundary point: a direction ending on the outer
// sphere (conical) or a peripheral coset (parabolic).
struct BoundaryProxy {
  enum class Kind : std::uint8_t { conical, parabolic };

  Kind kind = Kind::conical;
  Word word;                 // conical: the sphere word; parabolic: the coset representative
  CosetId coset;             // parabolic only
  std::size_t horoball = 0;  // parabolic only
  VertexId realization = 0;  // sphere vertex, or deepest vertex over the representative

  [[nodiscard]] bool parabolic() const { return kind == Kind::parabolic; }
  [[nodiscard]] std::string str() const;
  friend bool operator==(BoundaryProxy const& a, BoundaryProxy const& b) {
    return a.kind == b.kind && a.word == b.word && a.coset == b.coset;
  }
};

BoundaryProxy conical_proxy(CuspedSpace const& cs, Word const& sphere_word);
BoundaryProxy parabolic_proxy(CuspedSpace const& cs, CosetId const& coset);
BoundaryProxy parabolic_proxy(CuspedSpace const& cs, std::size_t horoball);
// Parses "c:<word>" or "p:<peripheral>:<representative>".
BoundaryProxy parse_proxy(CuspedSpace const& cs, std::string const& text);

struct ProxySample {
  std::vector<BoundaryProxy> proxies;
  std::vector<std::vector<HalfInt>> products;  // pairwise Gromov products at the identity
  std::int64_t threshold = 0;
};

struct ProxySampleOptions {
  std::size_t count = 4;
  std::size_t parabolic = 0;            // how many of count are parabolic
  std::int64_t threshold = -1;          // negative: floor(R / 3)
  std::size_t parabolic_radius = 0;     // max representative length; 0: floor(R / 2)
  std::size_t max_attempts = 2000;
};

std::int64_t default_separation(std::size_t radius);

// Incremental rejection sampling. Deterministic for a given generator state.
ProxySample sample_proxies(DistanceOracle& oracle, ProxySampleOptions const& options,
                           Rng& rng);
ProxySample sample_proxies(CuspedSpace const& cs, ProxySampleOptions const& options,
                           std::uint64_t seed);

struct ProxyPath {
  std::vector<VertexId> path;
  std::size_t trim = 0;  // vertices at each end excluded from measurements
  [[nodiscard]] std::span<VertexId const> trimmed() const;
};

ProxyPath proxy_geodesic(DistanceOracle& oracle, BoundaryProxy const& p, BoundaryProxy const& q,
                         double delta_hat);

// The corresponding proxy in a space with a larger (or equal) radius:
// conical words are continued by repeating their last letter.
BoundaryProxy extend_proxy(CuspedSpace const& larger, BoundaryProxy const& p);

struct DriftReport {
  std::size_t tuples = 0;
  double max_drift = 0.0;
  double mean_drift = 0.0;
  std::vector<double> small_values;
  std::vector<double> large_values;
};

using ProxyQuantity =
    std::function<double(DistanceOracle&, std::vector<BoundaryProxy> const&)>;

// Evaluates the quantity on each tuple and on its extension to the larger
// space and reports the largest change.
DriftReport stabilization_check(CuspedSpace const& small, CuspedSpace const& large,
                                std::vector<std::vector<BoundaryProxy>> const& tuples,
                                ProxyQuantity const& quantity);

}  // namespace cusplab
