#include <benchmark/benchmark.h>

#include "cprlab/experiments.hpp"
#include "cprlab/measure.hpp"
#include "cprlab/solver.hpp"

using namespace cprlab;

static void BM_SpectralInit(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    int k = 5;
    int m = measurement_count(n, k, 8.0);
    ComplexVector x0 = random_sparse_signal(n, k, 1);
    MeasurementEnsemble e = MeasurementEnsemble::sample(n, m, 2);
    Eigen::VectorXd y = apply_map_signal(e, x0);
    for (auto _ : state) {
        SpectralInitResult init = spectral_init(e, y, k);
        benchmark::DoNotOptimize(init.x.raw().data());
    }
}
BENCHMARK(BM_SpectralInit)->Arg(64)->Arg(128)->Arg(256);

static void BM_Recover(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    int k = 5;
    int m = measurement_count(n, k, 8.0);
    ComplexVector x0 = random_sparse_signal(n, k, 1);
    MeasurementEnsemble e = MeasurementEnsemble::sample(n, m, 2);
    Eigen::VectorXd y = apply_map_signal(e, x0);
    SolverConfig cfg;
    cfg.k = k;
    cfg.seed = 3;
    for (auto _ : state) {
        RecoveryResult r = recover(e, y, cfg);
        benchmark::DoNotOptimize(r.residual);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Recover)->Arg(64)->Arg(128);
