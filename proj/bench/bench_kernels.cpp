#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "thermint/decomposition.hpp"
#include "thermint/field.hpp"

using namespace thermint;

namespace {

const SourceSpectrum kSpectrum{100.0, 1.0, 1.0};

Layout layout() { return double_mz_layout({60.0, 10.0, 60.0, 10.0, 0.5, 0.0}); }

EnsembleSettings settings(std::size_t n, int workers) {
    EnsembleSettings s;
    s.n_samples = n;
    s.seed = 3;
    s.workers = workers;
    return s;
}

void BM_ReferenceEnsemble(benchmark::State& state) {
    const auto grid = build_grid(kSpectrum, static_cast<std::size_t>(state.range(0)));
    const auto l = layout();
    const auto s = settings(2000, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::ensemble_intensities(l, grid, 0.0, 0.0, s));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.n_samples));
}

void BM_ParallelEnsemble(benchmark::State& state) {
    const auto grid = build_grid(kSpectrum, static_cast<std::size_t>(state.range(0)));
    const auto p = Propagators::build(layout(), grid, 0.0, 0.0);
    const auto s = settings(2000, static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ensemble_intensities(p, grid, s));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.n_samples));
}

std::vector<std::complex<double>> factors(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<std::complex<double>> v(n);
    for (auto& z : v) z = {g(rng), g(rng)};
    return v;
}

void BM_PairSum(benchmark::State& state, PairSumMode mode) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = factors(n, 1);
    const auto y = factors(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(pair_sum_real(x, y, mode));
    state.SetComplexityN(state.range(0));
}

void BM_Decompose(benchmark::State& state, PairSumMode mode) {
    const auto grid = build_grid(kSpectrum, static_cast<std::size_t>(state.range(0)));
    const auto s = settings(200, 1);
    const auto l = layout();
    for (auto _ : state) benchmark::DoNotOptimize(decompose_correlation(l, grid, 0.0, 0.0, s, mode));
}

}  // namespace

BENCHMARK(BM_ReferenceEnsemble)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelEnsemble)
    ->ArgsProduct({{64, 256}, {1, 2, 4}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK_CAPTURE(BM_PairSum, factorized, PairSumMode::Factorized)
    ->RangeMultiplier(4)
    ->Range(8, 512)
    ->Complexity();
BENCHMARK_CAPTURE(BM_PairSum, direct, PairSumMode::Direct)
    ->RangeMultiplier(4)
    ->Range(8, 512)
    ->Complexity();
BENCHMARK_CAPTURE(BM_Decompose, factorized, PairSumMode::Factorized)
    ->Arg(64)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Decompose, direct, PairSumMode::Direct)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
