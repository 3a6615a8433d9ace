#include "cadence/datagen.hpp"
#include "cadence/lag_scan.hpp"
#include "cadence/trend_seg.hpp"

#include <benchmark/benchmark.h>

#include <map>

using namespace cadence;

static void BM_FitSegments(benchmark::State& state) {
    const auto p = planted_breakpoint_series(1, 0.02, static_cast<int>(state.range(0)),
                                             static_cast<int>(state.range(0)) / 35);
    for (auto _ : state) benchmark::DoNotOptimize(fit_segments(p.series));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitSegments)->RangeMultiplier(2)->Range(105, 1680)->Complexity();

static void BM_LagCorrelations(benchmark::State& state) {
    const auto m = generate(lag_study_config(1));
    std::vector<AppHistory> histories;
    std::map<std::string, std::vector<AppSnapshot>> by_app;
    for (const auto& s : m.snapshots) by_app[s.app_id].push_back(s);
    for (auto& [id, snaps] : by_app) {
        const auto category = snaps.front().category;
        histories.emplace_back(id, category, std::move(snaps));
    }
    std::vector<std::pair<Series, Series>> pairs;
    for (const auto& h : histories) pairs.emplace_back(release_impulse(h), rating_series(h));
    for (auto _ : state) {
        for (const auto& [u, r] : pairs) benchmark::DoNotOptimize(lag_correlations(u, r));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(pairs.size()));
}
BENCHMARK(BM_LagCorrelations)->Unit(benchmark::kMillisecond);
