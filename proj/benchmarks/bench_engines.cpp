#include <benchmark/benchmark.h>

#include "lcmi/bounds.hpp"
#include "lcmi/engines.hpp"

using namespace lcmi;

namespace {

void BM_BecRankProfile(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BinaryLinearCode code = random_code(n, n / 2, 42);
  for (auto _ : state) {
    BecRankProfile profile(code, 30);
    benchmark::DoNotOptimize(profile.mi(0.5));
  }
}
BENCHMARK(BM_BecRankProfile)->DenseRange(14, 22, 4);

void BM_BecProfileQuery(benchmark::State& state) {
  const BinaryLinearCode code = random_code(20, 10, 42);
  const BecRankProfile profile(code, 30);
  double t = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(profile.mi(t));
    t = t < 0.99 ? t + 0.001 : 0.01;
  }
}
BENCHMARK(BM_BecProfileQuery);

void BM_BscExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BinaryLinearCode code = random_code(n, n / 2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(bsc_mi_exact(code, 0.5).value);
}
BENCHMARK(BM_BscExact)->DenseRange(12, 20, 4);

void BM_HeterogeneousBsc(benchmark::State& state) {
  const BinaryLinearCode code = random_code(14, 7, 7);
  std::vector<double> ps(14);
  for (int i = 0; i < 14; ++i) ps[i] = 0.02 * (i + 1);
  for (auto _ : state) benchmark::DoNotOptimize(heterogeneous_bsc_mi_exact(code, ps).value);
}
BENCHMARK(BM_HeterogeneousBsc);

void BM_TypeClassRepeated(benchmark::State& state) {
  const Dmc ch = dmc_erasure(0.5, {0.3, 0.7});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(repeated_input_mi_exact(ch, n).value);
}
BENCHMARK(BM_TypeClassRepeated)->Arg(50)->Arg(200)->Arg(500);

void BM_BecMonteCarlo(benchmark::State& state) {
  const BinaryLinearCode code = repetition(50);
  for (auto _ : state)
    benchmark::DoNotOptimize(bec_mi_mc(code, 0.1, state.range(0), 7).value);
}
BENCHMARK(BM_BecMonteCarlo)->Arg(10'000)->Arg(100'000);

void BM_Thm1Bound(benchmark::State& state) {
  const BinaryLinearCode code = random_code(14, 7, 201);
  for (auto _ : state) benchmark::DoNotOptimize(thm1_bound(code, 0.5).bound);
}
BENCHMARK(BM_Thm1Bound);

}  // namespace

BENCHMARK_MAIN();
