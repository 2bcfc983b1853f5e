#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "srh/freq_est.hpp"
#include "srh/kde.hpp"
#include "srh/multipath.hpp"
#include "srh/nonergodic.hpp"
#include "srh/periodogram.hpp"
#include "srh/simulate.hpp"

using namespace srh;

namespace {

const HarmonizableModel& reference_model() {
  static const HarmonizableModel m =
      generate_model(Alpha(1.5), builtin_density("f1"), FixedTruncation{10'000}, 1);
  return m;
}

void BM_GenerateModel(benchmark::State& state) {
  const auto f1 = builtin_density("f1");
  const auto terms = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_model(Alpha(1.5), f1, FixedTruncation{terms}, 1));
  }
}
BENCHMARK(BM_GenerateModel)->Arg(1'000)->Arg(10'000);

void BM_SamplePath(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_path(reference_model(), 500.0 / n, n));
}
BENCHMARK(BM_SamplePath)->Arg(1'000)->Unit(benchmark::kMillisecond);

void BM_PeriodogramFft(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto path = sample_path(reference_model(), 500.0 / n, n);
  PeriodogramEngine engine(n, next_pow2(8 * n));
  for (auto _ : state) benchmark::DoNotOptimize(engine.compute(path));
}
BENCHMARK(BM_PeriodogramFft)->Arg(1'000)->Arg(10'000);

void BM_EstimateFrequencies(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto path = sample_path(reference_model(), 500.0 / n, n);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_frequencies(path));
}
BENCHMARK(BM_EstimateFrequencies)->Arg(1'000)->Unit(benchmark::kMillisecond);

void BM_SheatherJones(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  for (double& v : x) v = std::abs(g(rng));
  for (auto _ : state) benchmark::DoNotOptimize(bandwidth_sheather_jones(x));
}
BENCHMARK(BM_SheatherJones)->Arg(100)->Arg(10'000);

void BM_CfLimit(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cf_limit(reference_model(), 1.0));
}
BENCHMARK(BM_CfLimit);

void BM_StableFit(benchmark::State& state) {
  Rng rng = make_stream(5, 0);
  const auto x = sample_sas(Alpha(1.5), ScaleParam(1.0), rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_stable_params(x));
}
BENCHMARK(BM_StableFit)->Arg(100)->Arg(10'000);

}  // namespace
BENCHMARK_MAIN();
