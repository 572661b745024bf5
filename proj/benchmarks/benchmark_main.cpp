#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mig/detector.hpp"
#include "mig/filter.hpp"
#include "mig/measures.hpp"
#include "mig/median.hpp"
#include "mig/rng.hpp"
#include "mig/scenario.hpp"

namespace {

using namespace mig;

Measure measure_of(const benchmark::State& state) {
    switch (state.range(0)) {
    case 0:
        return Measure::airm;
    case 1:
        return Measure::lem;
    case 2:
        return Measure::jbld;
    default:
        return Measure::skld;
    }
}

/// Clutter-like HPD cells of the given dimension, one per range cell.
std::vector<HpdMatrix> sample_cells(int n, int count, std::uint64_t seed) {
    ClutterScenario scenario;
    scenario.n = n;
    const ScenarioSampler sampler(scenario);
    auto rng = make_stream(seed, {0});
    std::vector<HpdMatrix> cells;
    cells.reserve(count);
    for (int i = 0; i < count; ++i)
        cells.push_back(toeplitz_estimate(sampler.draw_cell(rng)));
    return cells;
}

void Dist(benchmark::State& state) {
    const Measure m = measure_of(state);
    const int n = static_cast<int>(state.range(1));
    const auto cells = sample_cells(n, 2, 11);
    for (auto _ : state) {
        const double d = dist(m, cells[0], cells[1]);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(Dist)
    ->ArgsProduct({{0, 1, 2, 3}, {4, 8, 16}})
    ->ArgNames({"measure", "n"});

void Median(benchmark::State& state) {
    const Measure m = measure_of(state);
    const int k = static_cast<int>(state.range(1));
    const auto cells = sample_cells(8, k, 13);
    for (auto _ : state) {
        const MedianResult res = geometric_median(m, cells);
        benchmark::DoNotOptimize(res.objective);
    }
}
BENCHMARK(Median)
    ->ArgsProduct({{1, 2, 3}, {8, 16, 32}})
    ->ArgNames({"measure", "k"});

void Filter(benchmark::State& state) {
    const Measure m = measure_of(state);
    const auto cells = sample_cells(8, 40, 17);
    FilterParams params;
    params.m = static_cast<int>(state.range(1));
    params.h = 1.5;
    params.measure = m;
    for (auto _ : state) {
        const auto out = manifold_filter(cells, params);
        benchmark::DoNotOptimize(out.back().m()(0, 0));
    }
}
BENCHMARK(Filter)
    ->ArgsProduct({{1, 2, 3}, {5, 11}})
    ->ArgNames({"measure", "m"});

void Statistic(benchmark::State& state) {
    const Measure m = measure_of(state);
    const bool filtered = state.range(1) != 0;
    ClutterScenario scenario;
    const ScenarioSampler sampler(scenario);
    auto rng = make_stream(19, {0});
    CellMap map;
    for (int i = 0; i < 9; ++i)
        map.cells.push_back(sampler.draw_cell(rng));
    map.cut_index = 4;
    DetectorConfig config;
    config.measure = m;
    if (filtered) {
        FilterParams fp;
        fp.measure = m;
        config.filter = fp;
    }
    for (auto _ : state) {
        const double t = mig_statistic(map, config);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(Statistic)
    ->ArgsProduct({{1, 2, 3}, {0, 1}})
    ->ArgNames({"measure", "filtered"});

void ToeplitzEstimate(benchmark::State& state) {
    ClutterScenario scenario;
    scenario.n = static_cast<int>(state.range(0));
    const ScenarioSampler sampler(scenario);
    auto rng = make_stream(23, {0});
    const SampleVector x = sampler.draw_cell(rng);
    for (auto _ : state) {
        const HpdMatrix r = toeplitz_estimate(x);
        benchmark::DoNotOptimize(r.m()(0, 0));
    }
}
BENCHMARK(ToeplitzEstimate)->Arg(4)->Arg(8)->Arg(16)->ArgName("n");

} // namespace

BENCHMARK_MAIN();
