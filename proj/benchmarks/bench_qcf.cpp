#include <benchmark/benchmark.h>

#include "qcf/analytics.hpp"
#include "qcf/optimizer.hpp"
#include "qcf/oracle.hpp"
#include "qcf/simulator.hpp"

using namespace qcf;

namespace {

ChannelParams table_params(double length_km) {
    ChannelParams ch;
    ch.length_km = length_km;
    return ch;
}

void BM_HelstromSinglePhoton(benchmark::State& state) {
    const DensityMatrix rho0 = mixture_density(0, StateCoefficient(0.85), 1);
    const DensityMatrix rho1 = mixture_density(1, StateCoefficient(0.85), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(helstrom_success(rho0, rho1));
    }
}
BENCHMARK(BM_HelstromSinglePhoton);

void BM_HelstromTwoPhoton(benchmark::State& state) {
    const DensityMatrix rho0 = mixture_density(0, StateCoefficient(0.85), 2);
    const DensityMatrix rho1 = mixture_density(1, StateCoefficient(0.85), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(helstrom_success(rho0, rho1));
    }
}
BENCHMARK(BM_HelstromTwoPhoton);

void BM_HonestAbort(benchmark::State& state) {
    const ChannelParams ch = table_params(21.0);
    const ProtocolParams p{state.range(0), SourceParams{0.009}, StateCoefficient(0.87)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(honest_abort(p, ch));
    }
}
BENCHMARK(BM_HonestAbort)->Arg(1000)->Arg(15000);

void BM_EventProbs(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(event_probs(15000, SourceParams{0.009}));
    }
}
BENCHMARK(BM_EventProbs);

void BM_SolveFairA(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_fair_a(13350, SourceParams{0.009}));
    }
}
BENCHMARK(BM_SolveFairA);

void BM_SolveMuForAbort(benchmark::State& state) {
    const ChannelParams ch = table_params(21.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_mu_for_abort(13350, ch, 0.01));
    }
}
BENCHMARK(BM_SolveMuForAbort);

void BM_OptimizeHeadline(benchmark::State& state) {
    const ChannelParams ch = table_params(21.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimize(ch, 0.01));
    }
}
BENCHMARK(BM_OptimizeHeadline)->Unit(benchmark::kMillisecond);

void BM_RunHonest(benchmark::State& state) {
    const ChannelParams ch = table_params(10.0);
    const ProtocolParams p{state.range(0), SourceParams{0.005}, StateCoefficient(0.9)};
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_honest(p, ch, ++seed));
    }
}
BENCHMARK(BM_RunHonest)->Arg(1000)->Arg(15000);

void BM_ConclusiveSearch(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            search_conclusive_strategies(StateCoefficient(0.9), static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_ConclusiveSearch)->Arg(60)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
