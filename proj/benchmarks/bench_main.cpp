#include <benchmark/benchmark.h>

#include <vector>

#include "granet/allocator.hpp"
#include "granet/baseline_cf.hpp"
#include "granet/channels.hpp"
#include "granet/granulation.hpp"
#include "granet/mlp.hpp"
#include "granet/rng.hpp"

using namespace granet;

namespace {

NetworkModel make_model(std::size_t inputs, std::size_t hidden, std::uint64_t seed) {
    Rng rng(seed);
    return random_model({inputs, hidden, 1}, 0.8, rng);
}

Dataset make_data(std::size_t n, std::size_t m, std::uint64_t seed) {
    Rng rng(seed);
    Dataset ds;
    for (std::size_t c = 0; c < m; ++c) ds.feature_names.push_back("f" + std::to_string(c));
    ds.target_name = "y";
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<double> x(m);
        for (double& v : x) v = rng.uniform();
        ds.features.push_back(x);
        ds.targets.push_back(rng.uniform());
    }
    return ds;
}

}  // namespace

static void BM_Forward(benchmark::State& state) {
    NetworkModel model = make_model(5, state.range(0), 1);
    std::vector<double> x{0.2, 0.4, 0.6, 0.8, 0.5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(forward(model, x));
    }
}
BENCHMARK(BM_Forward)->Arg(4)->Arg(8)->Arg(32);

static void BM_IntervalForward(benchmark::State& state) {
    NetworkModel model = make_model(5, state.range(0), 2);
    GranularityAllocation alloc = GranularityAllocation::uniform(5, 0.5);
    std::vector<double> x{0.2, 0.4, 0.6, 0.8, 0.5};
    auto granules = granulate(x, alloc);
    for (auto _ : state) {
        benchmark::DoNotOptimize(interval_forward(model, granules));
    }
}
BENCHMARK(BM_IntervalForward)->Arg(4)->Arg(8)->Arg(32);

static void BM_ObjectiveEvaluation(benchmark::State& state) {
    NetworkModel model = make_model(5, 8, 3);
    Dataset data = make_data(state.range(0), 5, 4);
    GranularityAllocation alloc = GranularityAllocation::uniform(5, 0.5);
    ObjectiveConfig objective{1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_objective(model, data, alloc, objective));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ObjectiveEvaluation)->Arg(50)->Arg(200);

static void BM_TrainEpochs(benchmark::State& state) {
    Dataset data = make_data(100, 5, 5);
    TrainingConfig cfg;
    cfg.epochs = state.range(0);
    cfg.seed = 6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(train(data, {5, 8, 1}, cfg));
    }
}
BENCHMARK(BM_TrainEpochs)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_Optimize(benchmark::State& state) {
    NetworkModel model = make_model(5, 8, 7);
    Dataset data = make_data(60, 5, 8);
    PsoConfig pso;
    pso.swarm_size = 15;
    pso.iterations = state.range(0);
    pso.stagnation_limit = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize(model, data, 0.5, ObjectiveConfig{1.0}, pso));
    }
}
BENCHMARK(BM_Optimize)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_Recommend(benchmark::State& state) {
    ChannelCatalog catalog = ChannelCatalog::builtin();
    Interval news(3, 9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(recommend(news, catalog, 3));
    }
}
BENCHMARK(BM_Recommend);

static void BM_PredictKnn(benchmark::State& state) {
    Rng rng(9);
    std::vector<std::tuple<std::string, std::string, double>> triples;
    std::size_t users = state.range(0);
    for (std::size_t u = 0; u < users; ++u) {
        for (std::size_t i = 0; i < 20; ++i) {
            if (rng.uniform() < 0.6) {
                triples.emplace_back("u" + std::to_string(u), "i" + std::to_string(i),
                                     1.0 + std::floor(rng.uniform() * 5.0));
            }
        }
    }
    RatingMatrix matrix = RatingMatrix::from_triples(triples);
    for (auto _ : state) {
        benchmark::DoNotOptimize(predict_knn(matrix, std::size_t{0}, std::size_t{0}, 5));
    }
}
BENCHMARK(BM_PredictKnn)->Arg(20)->Arg(100);

BENCHMARK_MAIN();
