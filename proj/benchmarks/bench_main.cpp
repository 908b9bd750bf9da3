#include <memory>
#include <vector>

#include <benchmark/benchmark.h>

#include "bdglab/gauge_analysis.hpp"
#include "bdglab/integrator.hpp"
#include "bdglab/orlicz_space.hpp"
#include "bdglab/paths.hpp"
#include "bdglab/random.hpp"

namespace {

using namespace bdglab;

void BM_PhiloxNormals(benchmark::State& state) {
  std::vector<double> out(static_cast<std::size_t>(state.range(0)));
  std::uint64_t rep = 0;
  for (auto _ : state) {
    CounterRng rng(derive_key(1, "bench"), rep++, 0);
    rng.fill_normal(out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PhiloxNormals)->Arg(1024)->Arg(4096);

void BM_SimulateBundle(benchmark::State& state) {
  const PathGrid grid(1.0, static_cast<std::size_t>(state.range(0)));
  std::uint64_t rep = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_bundle(7, rep++, 2, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}
BENCHMARK(BM_SimulateBundle)->Arg(256)->Arg(1024)->Arg(4096);

void BM_LuxemburgNorm(benchmark::State& state) {
  const auto space = std::make_shared<const DiscreteMeasureSpace>(std::vector<double>{1.0, 1.0, 2.0, 0.5});
  const auto f = random_orlicz_vector(space, 2, 3, 0);
  const auto g = state.range(0) == 0 ? power_gauge(2.0) : lambda_alpha_gauge(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(luxemburg_norm(f, g));
  state.SetLabel(g.name());
}
BENCHMARK(BM_LuxemburgNorm)->Arg(0)->Arg(1);

void BM_NumericPhi(benchmark::State& state) {
  const auto g = lambda_alpha_gauge(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(phi_of(g, 0.3, TransformRoute::numeric));
}
BENCHMARK(BM_NumericPhi)->Unit(benchmark::kMillisecond);

void BM_NumericComplementary(benchmark::State& state) {
  const auto comp = complementary_gauge(power_gauge(3.0), TransformRoute::numeric);
  for (auto _ : state) benchmark::DoNotOptimize(comp(0.05));
}
BENCHMARK(BM_NumericComplementary)->Unit(benchmark::kMicrosecond);

void BM_ItoIntegral(benchmark::State& state) {
  const PathGrid grid(1.0, static_cast<std::size_t>(state.range(0)));
  const DiscreteMeasureSpace space(std::vector<double>{1.0, 1.0, 2.0, 0.5});
  const auto b = simulate_bundle(9, 0, 2, grid);
  const auto spec = suite_integrand("two_coord_mix", 1.0, 8);
  for (auto _ : state) benchmark::DoNotOptimize(ito_integral(spec, b, space));
}
BENCHMARK(BM_ItoIntegral)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
