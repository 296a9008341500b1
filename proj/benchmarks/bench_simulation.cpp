#include <benchmark/benchmark.h>

#include "cafsim/simulation.hpp"

namespace {

cafsim::SystemParams reference(double b_min, double b_max, double lambda_p) {
    cafsim::SystemParams p;
    p.channels = 12;
    p.min_bandwidth = b_min;
    p.max_bandwidth = b_max;
    p.pu_arrival_rate = lambda_p;
    p.su_arrival_rate = 7.2;
    p.pu_service_rate = 0.45;
    p.su_holding_rate = 1.0;
    p.su_residence_rate = 1.0;
    return p;
}

void BM_StepEventsPerSecond(benchmark::State& state) {
    cafsim::Simulation sim(reference(2, 4, 2.0), 1);
    for (auto _ : state) {
        auto ev = sim.step();
        benchmark::DoNotOptimize(ev.time);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StepEventsPerSecond);

void BM_TrackedStep(benchmark::State& state) {
    cafsim::Simulation sim(reference(2, 4, 2.0), 1, /*track_map=*/true);
    for (auto _ : state) {
        auto ev = sim.step();
        benchmark::DoNotOptimize(ev.time);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_TrackedStep);

void BM_SimulatePoint(benchmark::State& state) {
    cafsim::SimConfig cfg;
    cfg.params = reference(2, 4, 2.0);
    cfg.max_events = static_cast<std::uint64_t>(state.range(0));
    cfg.warmup_events = cfg.max_events / 10;
    cfg.replications = 2;
    cfg.seed = 9;
    for (auto _ : state) {
        auto result = cafsim::simulate(cfg);
        benchmark::DoNotOptimize(result.metrics.throughput);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * cfg.replications);
}
BENCHMARK(BM_SimulatePoint)->Arg(100'000)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
