#include <benchmark/benchmark.h>

#include "semnoma/montecarlo.hpp"

namespace {

using namespace semnoma;

void BM_RunHybrid(benchmark::State& state) {
    RunConfig cfg;
    cfg.n_realizations = std::size_t(state.range(0));
    cfg.p_max = db_to_linear(10.0);
    cfg.max_threads = unsigned(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(run_hybrid(cfg));
    state.SetItemsProcessed(std::int64_t(state.iterations()) * state.range(0));
}
BENCHMARK(BM_RunHybrid)->Args({2'000, 1})->Args({2'000, 0})->Unit(benchmark::kMillisecond);

void BM_RunOma(benchmark::State& state) {
    RunConfig cfg;
    cfg.n_realizations = std::size_t(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_oma_baseline(cfg, {0.67, 0.5, 0.5}));
    state.SetItemsProcessed(std::int64_t(state.iterations()) * state.range(0));
}
BENCHMARK(BM_RunOma)->Arg(10'000)->Unit(benchmark::kMillisecond);

void BM_DrawRealization(benchmark::State& state) {
    const GeometryConfig geom;
    std::uint64_t i = 0;
    for (auto _ : state) {
        RandomEngine rng = child_stream(42, i++);
        benchmark::DoNotOptimize(draw_realization(rng, geom));
    }
}
BENCHMARK(BM_DrawRealization);

}  // namespace
