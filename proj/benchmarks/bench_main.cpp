#include <benchmark/benchmark.h>

#include "cusplab/coarse_geometry.hpp"
#include "cusplab/cusped_space.hpp"
#include "cusplab/distance_oracle.hpp"
#include "cusplab/hyperbolicity.hpp"
#include "cusplab/random.hpp"

using namespace cusplab;

namespace {

Presentation torus() { return Presentation(2, {{parse_word("abAB")}}); }

CuspedSpace const& space(std::size_t R) {
  static CuspedSpace r6(torus(), 6, 4);
  static CuspedSpace r8(torus(), 8, 4);
  return R == 6 ? r6 : r8;
}

void BM_BuildSpace(benchmark::State& state) {
  auto R = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    CuspedSpace cs(torus(), R, 4);
    benchmark::DoNotOptimize(cs.size());
  }
}
BENCHMARK(BM_BuildSpace)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Bfs(benchmark::State& state) {
  auto const& cs = space(static_cast<std::size_t>(state.range(0)));
  Bfs bfs(cs.graph());
  Rng rng(1);
  for (auto _ : state) {
    auto s = static_cast<VertexId>(rng.uniform_index(cs.size()));
    benchmark::DoNotOptimize(bfs.run(s).data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cs.size()));
}
BENCHMARK(BM_Bfs)->Arg(6)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_CrossRatio(benchmark::State& state) {
  auto const& cs = space(8);
  auto pool = cs.interior_vertices(4);
  DistanceOracle oracle(cs);
  Rng rng(2);
  for (auto _ : state) {
    oracle.clear();
    VertexId a = rng.pick(pool), b = rng.pick(pool), c = rng.pick(pool), d = rng.pick(pool);
    if (a == c || b == d) continue;
    benchmark::DoNotOptimize(cross_ratio(oracle, a, b, c, d));
  }
}
BENCHMARK(BM_CrossRatio)->Unit(benchmark::kMillisecond);

void BM_QuasiProjection(benchmark::State& state) {
  auto const& cs = space(8);
  auto pool = cs.interior_vertices(4);
  DistanceOracle oracle(cs);
  Rng rng(3);
  for (auto _ : state) {
    oracle.clear();
    VertexId a = rng.pick(pool), b = rng.pick(pool), c = rng.pick(pool);
    if (a == c) continue;
    benchmark::DoNotOptimize(quasi_projection(oracle, a, b, c, 2.0));
  }
}
BENCHMARK(BM_QuasiProjection)->Unit(benchmark::kMillisecond);

void BM_MeasureTriangle(benchmark::State& state) {
  auto const& cs = space(6);
  auto pool = cs.interior_vertices(3);
  Rng rng(4);
  for (auto _ : state) {
    VertexId a = rng.pick(pool), b = rng.pick(pool), c = rng.pick(pool);
    if (a == b || b == c || a == c) continue;
    benchmark::DoNotOptimize(measure_triangle(cs, a, b, c).slimness);
  }
}
BENCHMARK(BM_MeasureTriangle)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
