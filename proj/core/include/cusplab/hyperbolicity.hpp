#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "cusplab/cusped_space.hpp"
#include "cusplab/numeric.hpp"

namespace cusplab {

HalfInt gromov_product(CuspedSpace const& cs, VertexId a, VertexId b, VertexId p);
// (a,b)_p from the three distances.
inline HalfInt gromov_product(std::int64_t dap, std::int64_t dbp, std::int64_t dab) {
  return HalfInt::from_twice(dap + dbp - dab);
}

struct TriangleMeasurement {
  VertexId a = 0, b = 0, c = 0;
  // Canonical sides [a,b], [b,c], [c,a], each oriented as named.
  std::array<std::vector<VertexId>, 3> sides;
  std::int32_t slimness = 0;
  VertexId i_a = 0, i_b = 0, i_c = 0;  // i_a on [b,c], i_b on [c,a], i_c on [a,b]
  std::int32_t thinness = 0;
};

TriangleMeasurement measure_triangle(CuspedSpace const& cs, VertexId a, VertexId b, VertexId c);
// Same, reusing BFS arrays rooted at a, b and c.
TriangleMeasurement measure_triangle(CuspedSpace const& cs, VertexId a, VertexId b, VertexId c,
                                     std::vector<std::int32_t> const& da,
                                     std::vector<std::int32_t> const& db,
                                     std::vector<std::int32_t> const& dc, Workspace& ws);

struct DeltaOptions {
  std::size_t samples = 500;
  std::int32_t min_separation = 1;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::size_t attempts_per_sample = 50;
  // Triangle vertices come from interior_vertices(interior_radius); 0 means floor(R/2).
  std::size_t interior_radius = 0;
};

struct TriangleRecord {
  VertexId a = 0, b = 0, c = 0;
  std::int32_t slimness = 0;
  std::int32_t thinness = 0;
  std::size_t flagged_attempts = 0;
};

struct DeltaEstimate {
  std::size_t samples = 0;
  std::int32_t max_slimness = 0;
  std::int32_t max_thinness = 0;
  std::map<std::int32_t, std::size_t> histogram;  // slimness -> count
  std::size_t attempts = 0;
  double flag_fraction = 0.0;  // flagged attempts / attempts
  std::vector<TriangleRecord> triangles;
};

// Samples vertex triples that are pairwise at least min_separation apart
// and whose three distances are not truncation suspect.
DeltaEstimate estimate_delta(CuspedSpace const& cs, DeltaOptions const& options);

}  // namespace cusplab
