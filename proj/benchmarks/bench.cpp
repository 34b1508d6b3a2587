#include <benchmark/benchmark.h>

#include "frosty/binomial.hpp"
#include "frosty/scenario.hpp"

namespace {

void BM_TailDefaultParams(benchmark::State& state) {
    for (auto _ : state) {
        auto v = frosty::binAtLeast(80, mpq_class(1, 5), 48);
        benchmark::DoNotOptimize(v);
    }
}
BENCHMARK(BM_TailDefaultParams);

void BM_SafetyReport(benchmark::State& state) {
    for (auto _ : state) {
        auto r = frosty::paramSafetyReport(80, 48, mpq_class(1, 5), 300);
        benchmark::DoNotOptimize(r.union_bound);
    }
}
BENCHMARK(BM_SafetyReport);

void BM_FaultFreeRun(benchmark::State& state) {
    frosty::Scenario sc;
    sc.horizon = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto r = frosty::runScenario(sc);
        benchmark::DoNotOptimize(r.min_final_blocks);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FaultFreeRun)->Arg(200)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
