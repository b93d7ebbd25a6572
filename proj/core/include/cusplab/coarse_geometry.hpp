#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "cusplab/cusped_space.hpp"
#include "cusplab/distance_oracle.hpp"
#include "cusplab/numeric.hpp"

namespace cusplab {

// max over the sides [a,b], [b,c], [a,c] of dist(z, side).
std::int32_t f_abc(DistanceOracle& oracle, VertexId a, VertexId b, VertexId c, VertexId z);
std::int32_t f_abc(CuspedSpace const& cs, VertexId a, VertexId b, VertexId c, VertexId z);

struct QuasiCenter {
  VertexId vertex = 0;
  std::int32_t f_value = 0;
  std::size_t candidates = 0;
};

// Search radius around [a,c] used by quasi_projection.
std::int32_t candidate_radius(double delta_hat);

// Minimizer of f_abc among vertices within candidate_radius(delta_hat) of
// [a,c]; least id among minimizers. Returns b itself when b lies on [a,c].
QuasiCenter quasi_projection(DistanceOracle& oracle, VertexId a, VertexId b, VertexId c,
                             double delta_hat);
QuasiCenter quasi_projection(CuspedSpace const& cs, VertexId a, VertexId b, VertexId c,
                             double delta_hat);
// Same minimization over every vertex of the space.
QuasiCenter quasi_projection_global(DistanceOracle& oracle, VertexId a, VertexId b, VertexId c);

// 1/2 {d(a,d) - d(d,c) + d(b,c) - d(a,b)} with the infinite conventions for
// coincident points; a = c or b = d is an undefined-tuple error.
ExtendedValue cross_ratio(DistanceOracle& oracle, VertexId a, VertexId b, VertexId c, VertexId d);
ExtendedValue cross_ratio(CuspedSpace const& cs, VertexId a, VertexId b, VertexId c, VertexId d);
// The formula itself, no conventions.
inline HalfInt cross_ratio_formula(std::int64_t dad, std::int64_t ddc, std::int64_t dbc,
                                   std::int64_t dab) {
  return HalfInt::from_twice(dad - ddc + dbc - dab);
}

struct RelativeCrossRatio {
  ExtendedValue r_estimate;
  std::int32_t center_estimate = 0;
  VertexId z = 0;  // entry point of [x, deep] into the horoball
  VertexId w = 0;  // entry point of [y, deep]
  QuasiCenter center;
};

// x and y realize the two proxies; the horoball realizes the parabolic point.
RelativeCrossRatio relative_cross_ratio(DistanceOracle& oracle, VertexId x, VertexId y,
                                        std::size_t horoball, double delta_hat);

struct ExitPointSet {
  std::size_t horoball = 0;
  VertexId target = 0;
  std::vector<VertexId> vertices;  // sorted by id
  std::size_t diameter = 0;        // in the word metric
};

// Last coset vertices over every geodesic from the deep vertex of the
// horoball to target.
ExitPointSet exit_point_set(DistanceOracle& oracle, std::size_t horoball, VertexId target);
VertexId exit_point(DistanceOracle& oracle, std::size_t horoball, VertexId target);
// The opposite selection policy, used to bound policy dependence.
VertexId exit_point_greatest(DistanceOracle& oracle, std::size_t horoball, VertexId target);

// Path vertex nearest to x; least path index among ties.
VertexId nearest_point_projection(CuspedSpace const& cs, VertexId x,
                                  std::vector<VertexId> const& path);

struct ProbeResult {
  std::size_t max_diameter = 0;
  std::size_t samples = 0;
  std::vector<std::size_t> diameters;
};

struct ProbeOptions {
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::size_t attempts_per_sample = 50;
};

// For sampled sources outside the horoball: d_G diameter of the entry points
// of geodesics to the deep vertices over every base point.
ProbeResult visual_boundedness_probe(CuspedSpace const& cs, std::size_t horoball,
                                     ProbeOptions const& options);

// For sampled geodesics g between ball vertices and sampled segments between
// ball vertices staying outside the P-neighborhood of g: diameter of the nearest point projection of the
// segment onto g.
ProbeResult bounded_projection_probe(CuspedSpace const& cs, std::int32_t P,
                                     ProbeOptions const& options);
std::int32_t default_projection_margin(double delta_hat);

struct LedgerEntry {
  double max = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

// Empirical constants keyed by (name, R, D). Merging is commutative and
// associative: maxima are maximized, sample counts added, seeds minimized.
class ConstantsLedger {
 public:
  using Key = std::tuple<std::string, std::size_t, std::size_t>;

  void record(std::string const& name, double value, std::size_t R, std::size_t D,
              std::uint64_t seed, std::size_t samples = 1);
  void merge(ConstantsLedger const& other);
  [[nodiscard]] std::optional<LedgerEntry> get(std::string const& name, std::size_t R,
                                               std::size_t D) const;
  [[nodiscard]] std::map<Key, LedgerEntry> const& entries() const { return entries_; }

  [[nodiscard]] nlohmann::json to_json() const;
  static ConstantsLedger from_json(nlohmann::json const& j);

  friend bool operator==(ConstantsLedger const&, ConstantsLedger const&);

 private:
  std::map<Key, LedgerEntry> entries_;
};

}  // namespace cusplab
