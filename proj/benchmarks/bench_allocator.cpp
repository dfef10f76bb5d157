#include <benchmark/benchmark.h>

#include "semnoma/allocator.hpp"
#include "semnoma/slot_sampler.hpp"

namespace {

using namespace semnoma;

const std::vector<SampledSlot>& slots(SlotMode mode) {
    static const ModelConfig model;
    static const auto hetero = sample_slots(1, SlotMode::hetero_noma, 256, model);
    static const auto semantic = sample_slots(2, SlotMode::semantic_noma, 256, model);
    return mode == SlotMode::hetero_noma ? hetero : semantic;
}

void BM_SolveSlot(benchmark::State& state) {
    const auto mode = SlotMode(state.range(0));
    const auto& set = slots(mode);
    const ModelConfig model;
    const SolverConfig solver;
    std::size_t i = 0;
    for (auto _ : state) {
        const SampledSlot& s = set[i++ % set.size()];
        benchmark::DoNotOptimize(solve_slot(s.plan, s.ch, s.p_max, model, solver));
    }
    state.SetLabel(to_string(mode));
}
BENCHMARK(BM_SolveSlot)->Arg(int(SlotMode::hetero_noma))->Arg(int(SlotMode::semantic_noma));

void BM_GridOracle(benchmark::State& state) {
    const auto& set = slots(SlotMode::hetero_noma);
    const ModelConfig model;
    const auto n = std::size_t(state.range(0));
    std::size_t i = 0;
    for (auto _ : state) {
        const SampledSlot& s = set[i++ % set.size()];
        benchmark::DoNotOptimize(grid_oracle(s.plan, s.ch, s.p_max, model, n));
    }
    state.SetItemsProcessed(std::int64_t(state.iterations()) * std::int64_t(n + 1));
}
BENCHMARK(BM_GridOracle)->Arg(1'000)->Arg(100'000)->Unit(benchmark::kMicrosecond);

void BM_Logistic(benchmark::State& state) {
    const LogisticParams p;
    double g = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(logistic_similarity(g, p));
        g = g > 50.0 ? 0.0 : g + 0.37;
    }
}
BENCHMARK(BM_Logistic);

}  // namespace
