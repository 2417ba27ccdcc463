#include <benchmark/benchmark.h>

#include <cmath>

#include "nodal/geometry.hpp"
#include "nodal/limitdist.hpp"
#include "nodal/randomwave.hpp"
#include "nodal/spectra.hpp"

namespace {

void BM_enumerate_window(benchmark::State& state) {
    const auto model =
        nodal::ModelSpec::oscillator({1.0, std::sqrt(2.0)});
    const double e0 = double(state.range(0));
    for (auto _ : state) {
        std::uint64_t count = nodal::enumerate_states(
            model, e0, 1.0, [](const nodal::QuantumState&) {});
        benchmark::DoNotOptimize(count);
    }
    state.SetItemsProcessed(state.iterations() *
                            std::int64_t(nodal::weyl_count(model, 2.0 * e0) -
                                         nodal::weyl_count(model, e0)));
}
BENCHMARK(BM_enumerate_window)->Arg(200)->Arg(500)->Arg(1000);

void BM_limit_sampling(benchmark::State& state) {
    const auto geom = nodal::find_j_crit(
        nodal::ModelSpec::oscillator({1.0, 1.0, 1.0}));
    const std::uint64_t samples = std::uint64_t(state.range(0));
    for (auto _ : state) {
        auto h = nodal::sample_limit_distribution(geom, samples, 1, 0.005, 1);
        benchmark::DoNotOptimize(h);
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(samples));
}
BENCHMARK(BM_limit_sampling)->Arg(1 << 18)->Arg(1 << 20);

void BM_find_j_crit(benchmark::State& state) {
    const auto model = nodal::ModelSpec::custom(
        2, {{1.0, {2, 0}}, {1.0, {1, 1}}, {1.0, {0, 2}}});
    for (auto _ : state) {
        auto geom = nodal::find_j_crit(model);
        benchmark::DoNotOptimize(geom);
    }
}
BENCHMARK(BM_find_j_crit);

void BM_quadrature_p(benchmark::State& state) {
    const auto geom = nodal::find_j_crit(
        nodal::ModelSpec::oscillator({1.0, 1.0, 1.0}));
    for (auto _ : state) {
        double p = nodal::quadrature_p(geom, 0.1);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_quadrature_p);

void BM_random_wave_field(benchmark::State& state) {
    nodal::RandomWaveConfig cfg;
    cfg.n_waves = int(state.range(0));
    cfg.side = 15.0;
    cfg.seed = 3;
    for (auto _ : state) {
        auto field = nodal::sample_wave(cfg);
        benchmark::DoNotOptimize(field);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) *
                            std::int64_t(cfg.points_per_axis()) *
                            cfg.points_per_axis() * cfg.points_per_axis());
}
BENCHMARK(BM_random_wave_field)->Arg(100)->Arg(500);

void BM_label_domains(benchmark::State& state) {
    nodal::RandomWaveConfig cfg;
    cfg.n_waves = 200;
    cfg.side = double(state.range(0));
    cfg.seed = 4;
    const auto grid = nodal::signs_of(nodal::sample_wave(cfg));
    for (auto _ : state) {
        auto census = nodal::label_domains(grid);
        benchmark::DoNotOptimize(census);
    }
    state.SetItemsProcessed(state.iterations() * std::int64_t(grid.cells()));
}
BENCHMARK(BM_label_domains)->Arg(15)->Arg(30);

}  // namespace

BENCHMARK_MAIN();
