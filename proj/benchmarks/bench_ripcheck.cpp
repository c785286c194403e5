#include <benchmark/benchmark.h>

#include "cprlab/measure.hpp"
#include "cprlab/ripcheck.hpp"

using namespace cprlab;

static void BM_SampleX(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    int k = std::max(2, n / 16);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        LowRankSparseHermitian xp = sample_X(n, k, seed++);
        benchmark::DoNotOptimize(xp.lambda1);
    }
}
BENCHMARK(BM_SampleX)->Arg(64)->Arg(256);

static void BM_MapRatio(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    int k = std::max(2, n / 16);
    MeasurementEnsemble e = MeasurementEnsemble::sample(n, 4 * n, 5);
    LowRankSparseHermitian xp = sample_X(n, k, 9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(map_ratio(e, xp));
    }
}
BENCHMARK(BM_MapRatio)->Arg(64)->Arg(256);

static void BM_EstimateRip(benchmark::State& state) {
    MeasurementEnsemble e = MeasurementEnsemble::sample(64, 67, 5);
    long samples = state.range(0);
    for (auto _ : state) {
        RipEstimate est = estimate_rip(e, 4, samples, 11);
        benchmark::DoNotOptimize(est.lower_ratio);
    }
    state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(BM_EstimateRip)->Arg(100)->Arg(1000);
