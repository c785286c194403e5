#include <benchmark/benchmark.h>

#include "cprlab/experiments.hpp"
#include "cprlab/measure.hpp"

using namespace cprlab;

static void BM_SampleEnsemble(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    int m = 4 * n;
    for (auto _ : state) {
        MeasurementEnsemble e = MeasurementEnsemble::sample(n, m, 17);
        benchmark::DoNotOptimize(e.astar().data());
    }
    state.SetItemsProcessed(state.iterations() * n * m);
}
BENCHMARK(BM_SampleEnsemble)->Arg(32)->Arg(128)->Arg(512);

static void BM_ApplyMapSignal(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    int m = 4 * n;
    MeasurementEnsemble e = MeasurementEnsemble::sample(n, m, 17);
    ComplexVector x = random_sparse_signal(n, std::max(1, n / 16), 3);
    for (auto _ : state) {
        Eigen::VectorXd y = apply_map_signal(e, x);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_ApplyMapSignal)->Arg(32)->Arg(128)->Arg(512);
