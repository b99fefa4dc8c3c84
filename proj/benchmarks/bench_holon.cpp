#include <benchmark/benchmark.h>

#include "holon/galois.hpp"
#include "holon/random.hpp"
#include "holon/sheaf.hpp"
#include "holon/structure.hpp"

using namespace holon;

namespace {

NerveShape shape(std::size_t vertices) {
  NerveShape s;
  s.min_vertices = vertices;
  s.max_vertices = vertices;
  s.extra_edge_prob = 0.4;
  return s;
}

void BM_Pi1Presentation(benchmark::State& state) {
  Rng rng(1);
  auto n = random_connected_nerve(rng, shape(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(pi1_presentation(n, 0));
}
BENCHMARK(BM_Pi1Presentation)->Arg(8)->Arg(32)->Arg(128);

void BM_PermReps(benchmark::State& state) {
  Rng rng(2);
  auto n = random_triangle_free_nerve(rng, shape(6));
  auto p = pi1_presentation(n, 0);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_perm_reps(p, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_PermReps)->Arg(2)->Arg(3);

void BM_HolonomyGroup(benchmark::State& state) {
  Rng rng(3);
  auto s = random_sheaf(rng, shape(static_cast<std::size_t>(state.range(0))), 6, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(holonomy_group(s, 0));
}
BENCHMARK(BM_HolonomyGroup)->Arg(6)->Arg(24);

void BM_HolonomyCover(benchmark::State& state) {
  Rng rng(4);
  auto groups = small_groups();
  auto model = natural_model(groups.back());  // S4 on four points
  auto s = random_structure(rng, shape(8), model, 0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(build_holonomy_cover(s, 0));
}
BENCHMARK(BM_HolonomyCover);

void BM_GaugeSearch(benchmark::State& state) {
  Rng rng(5);
  auto groups = small_groups();
  auto model = free_model(groups.back());
  auto n = random_connected_nerve(rng, shape(8));
  std::vector<Perm> h;
  for (VertexId v = 0; v < n.vertex_count(); ++v) h.push_back(model.elements()[rng() % model.order()]);
  auto c = coboundary(n, model, h);
  auto t = trivial_cocycle(n, model);
  for (auto _ : state) benchmark::DoNotOptimize(gauge_equivalent(c, t));
}
BENCHMARK(BM_GaugeSearch);

void BM_Factor(benchmark::State& state) {
  auto a = static_cast<std::uint32_t>(state.range(0));
  FiniteField k(3, 6);
  auto f = irreducible_modulus(3, a);
  for (auto _ : state) benchmark::DoNotOptimize(factor_over_extension(f, k));
}
BENCHMARK(BM_Factor)->Arg(4)->Arg(6)->Arg(12);

void BM_Correspondence(benchmark::State& state) {
  auto n = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_complete_structures(2, n, std::uint64_t{1} << 24));
}
BENCHMARK(BM_Correspondence)->Arg(12)->Arg(24);

}  // namespace

BENCHMARK_MAIN();
