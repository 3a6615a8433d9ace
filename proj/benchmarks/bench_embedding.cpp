#include "cadence/datagen.hpp"
#include "cadence/patterns.hpp"
#include "cadence/tsne.hpp"
#include "cadence/ward.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace cadence;

static void BM_Tsne(benchmark::State& state) {
    const auto rows = as_rows(sample_archetype_windows(static_cast<int>(state.range(0)) / 4, 1));
    TsneOptions opt;
    opt.iterations = 300;
    opt.exaggeration_iterations = 100;
    for (auto _ : state) benchmark::DoNotOptimize(tsne_embed(rows, opt));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Tsne)->RangeMultiplier(2)->Range(100, 800)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_Ward(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    std::vector<Point2> pts(static_cast<std::size_t>(state.range(0)));
    for (auto& p : pts) p = {g(rng), g(rng)};
    for (auto _ : state) benchmark::DoNotOptimize(ward_cluster(pts, 4));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Ward)->RangeMultiplier(2)->Range(128, 2048)->Unit(benchmark::kMillisecond)->Complexity();
