#include "cadence/lasso.hpp"
#include "cadence/mnb.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace cadence;

namespace {

Design random_design(std::size_t n, std::size_t p, std::vector<double>& y) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    Design x;
    x.rows = n;
    x.columns.assign(p, std::vector<double>(n));
    for (auto& c : x.columns) {
        for (auto& v : c) v = g(rng);
    }
    y.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = x.columns[0][i] - x.columns[1][i] + 0.5 * x.columns[2][i] + g(rng);
    }
    return x;
}

} // namespace

static void BM_LassoFit(benchmark::State& state) {
    std::vector<double> y;
    const auto x = random_design(500, static_cast<std::size_t>(state.range(0)), y);
    const double lambda = 0.1 * lasso_lambda_max(x, y);
    for (auto _ : state) benchmark::DoNotOptimize(lasso_fit(x, y, lambda));
}
BENCHMARK(BM_LassoFit)->Arg(50)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

static void BM_LassoCv(benchmark::State& state) {
    std::vector<double> y;
    const auto x = random_design(300, 100, y);
    for (auto _ : state) benchmark::DoNotOptimize(lasso_cv(x, y));
}
BENCHMARK(BM_LassoCv)->Unit(benchmark::kMillisecond);

static void BM_MnbTrainPredict(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<FeatureVector> x(n, FeatureVector(250));
    std::vector<EffectLabel> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (auto& v : x[i]) v = u(rng) < 0.05 ? u(rng) : 0.0;
        y[i] = i % 2 ? EffectLabel::Positive : EffectLabel::Negative;
    }
    for (auto _ : state) {
        const auto m = mnb_train(x, y);
        for (const auto& v : x) benchmark::DoNotOptimize(mnb_predict(m, v));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_MnbTrainPredict)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_CrossValidate(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<FeatureVector> x(2000, FeatureVector(60));
    std::vector<EffectLabel> y(2000);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (auto& v : x[i]) v = u(rng);
        y[i] = u(rng) < 0.5 ? EffectLabel::Positive : EffectLabel::Negative;
    }
    for (auto _ : state) benchmark::DoNotOptimize(cross_validate(x, y, 5, 1.0, 1));
}
BENCHMARK(BM_CrossValidate)->Unit(benchmark::kMillisecond);
