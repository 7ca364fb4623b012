#include <benchmark/benchmark.h>

#include <vector>

#include "slrf/acquisition.hpp"
#include "slrf/dataset.hpp"
#include "slrf/forest.hpp"
#include "slrf/rng.hpp"
#include "slrf/sobol.hpp"
#include "slrf/synthetic.hpp"

namespace {

const slrf::Dataset& bench_dataset() {
    static const slrf::Dataset ds = slrf::make_blob_dataset(685, 8685);
    return ds;
}

void BM_forest_fit(benchmark::State& state) {
    const auto& ds = bench_dataset();
    slrf::ForestParams params;
    params.n_trees = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto forest = slrf::forest_fit(ds.samples, params, slrf::Rng(7), ds.class_count());
        benchmark::DoNotOptimize(forest);
    }
}
BENCHMARK(BM_forest_fit)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_forest_proba(benchmark::State& state) {
    const auto& ds = bench_dataset();
    slrf::ForestParams params;
    params.n_trees = 100;
    const auto forest = slrf::forest_fit(ds.samples, params, slrf::Rng(7), ds.class_count());
    std::size_t i = 0;
    for (auto _ : state) {
        auto p = slrf::forest_proba(forest, ds.samples[i % ds.samples.size()].features);
        benchmark::DoNotOptimize(p);
        ++i;
    }
}
BENCHMARK(BM_forest_proba);

void BM_sobol_batch(benchmark::State& state) {
    for (auto _ : state) {
        slrf::SobolStream stream(8);
        auto points = stream.next_points(static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(points);
    }
}
BENCHMARK(BM_sobol_batch)->Arg(1000);

void BM_select_ideal(benchmark::State& state) {
    const auto& ds = bench_dataset();
    slrf::ForestParams params;
    params.n_trees = 100;
    const slrf::Model model(
        slrf::forest_fit(ds.samples, params, slrf::Rng(7), ds.class_count()));
    const auto bounds = slrf::feature_bounds(ds.samples);
    slrf::SobolStream stream(ds.feature_count());
    std::vector<std::vector<double>> points;
    for (const auto& unit : stream.next_points(1000)) {
        points.push_back(slrf::scale_to_bounds(unit, bounds));
    }
    for (auto _ : state) {
        auto pick = slrf::select_ideal(model, points);
        benchmark::DoNotOptimize(pick);
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_select_ideal)->Unit(benchmark::kMillisecond);

void BM_nearest_candidate(benchmark::State& state) {
    const auto& ds = bench_dataset();
    const auto bounds = slrf::feature_bounds(ds.samples);
    std::vector<int> pool(460);
    for (int i = 0; i < 460; ++i) {
        pool[static_cast<std::size_t>(i)] = i;
    }
    const std::vector<double> ideal = ds.samples[600].features;
    for (auto _ : state) {
        auto hit = slrf::nearest_candidate(ideal, ds, pool, bounds);
        benchmark::DoNotOptimize(hit);
    }
}
BENCHMARK(BM_nearest_candidate);

} // namespace

BENCHMARK_MAIN();
