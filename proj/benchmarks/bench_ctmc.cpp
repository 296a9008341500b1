#include <benchmark/benchmark.h>

#include "cafsim/ctmc.hpp"
#include "cafsim/metrics.hpp"

namespace {

cafsim::SystemParams params_for(int channels, double b_min, double b_max) {
    cafsim::SystemParams p;
    p.channels = channels;
    p.min_bandwidth = b_min;
    p.max_bandwidth = b_max;
    p.pu_arrival_rate = 2.0;
    p.su_arrival_rate = 7.2;
    p.pu_service_rate = 0.45;
    p.su_holding_rate = 1.0;
    p.su_residence_rate = 1.0;
    return p;
}

void BM_BuildGenerator(benchmark::State& state) {
    const auto p = params_for(static_cast<int>(state.range(0)), 1, 4);
    const auto space = cafsim::enumerate_states(p);
    for (auto _ : state) {
        auto g = cafsim::build_generator(space, p);
        benchmark::DoNotOptimize(g.rates.data());
    }
    state.counters["states"] = static_cast<double>(space.size());
}
BENCHMARK(BM_BuildGenerator)->Arg(6)->Arg(12)->Arg(24);

void BM_SolveSteadyState(benchmark::State& state) {
    const auto p = params_for(static_cast<int>(state.range(0)), 1, 4);
    const auto space = cafsim::enumerate_states(p);
    const auto g = cafsim::build_generator(space, p);
    for (auto _ : state) {
        auto pi = cafsim::solve_steady_state(g);
        benchmark::DoNotOptimize(pi.probabilities.data());
    }
    state.counters["states"] = static_cast<double>(space.size());
}
BENCHMARK(BM_SolveSteadyState)->Arg(6)->Arg(12)->Arg(24);

void BM_UniformizationOracle(benchmark::State& state) {
    const auto p = params_for(static_cast<int>(state.range(0)), 1, 4);
    const auto g = cafsim::build_generator(cafsim::enumerate_states(p), p);
    for (auto _ : state) {
        auto pi = cafsim::uniformization_steady_state(g);
        benchmark::DoNotOptimize(pi.data());
    }
}
BENCHMARK(BM_UniformizationOracle)->Arg(6)->Arg(12);

void BM_FullAnalyticalPoint(benchmark::State& state) {
    const auto p = params_for(12, 2, 4);
    for (auto _ : state) {
        const auto space = cafsim::enumerate_states(p);
        const auto pi = cafsim::solve_steady_state(cafsim::build_generator(space, p));
        auto m = cafsim::compute_metrics(pi, space, p);
        benchmark::DoNotOptimize(m.throughput);
    }
}
BENCHMARK(BM_FullAnalyticalPoint);

}  // namespace
