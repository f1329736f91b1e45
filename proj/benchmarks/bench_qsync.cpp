#include <benchmark/benchmark.h>

#include "qsync/qsync.hpp"

using namespace qsync;

namespace {

void BM_VdpLiouvillian(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ModelSpec m = vdp_model(1.0, 0.1, n);
    for (auto _ : state) benchmark::DoNotOptimize(m.liouvillian());
}
BENCHMARK(BM_VdpLiouvillian)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_VdpSteadyState(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Liouvillian L = vdp_model(1.0, 0.1, n).liouvillian();
    for (auto _ : state) benchmark::DoNotOptimize(steady_state(L));
}
BENCHMARK(BM_VdpSteadyState)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_VdpAnalyze(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ModelSpec m = vdp_model(1.0, 0.1, n);
    for (auto _ : state) benchmark::DoNotOptimize(analyze(m).qfim.matrix(0, 0));
}
BENCHMARK(BM_VdpAnalyze)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_TqoFullQfim(benchmark::State& state) {
    const ModelSpec m = tqo_model_default(0.5);
    for (auto _ : state) benchmark::DoNotOptimize(analyze(m).qfim.matrix(0, 0));
}
BENCHMARK(BM_TqoFullQfim)->Unit(benchmark::kMicrosecond);

void BM_TqoFidelityOracle(benchmark::State& state) {
    const ModelSpec m = tqo_model_default(0.5);
    const Liouvillian L0 = m.liouvillian();
    const Liouvillian L1 = m.drive_liouvillian(0);
    for (auto _ : state) benchmark::DoNotOptimize(qfi_fidelity_oracle(L0, L1));
}
BENCHMARK(BM_TqoFidelityOracle)->Unit(benchmark::kMicrosecond);

void BM_UhlmannFidelity(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const DensityMatrix a = steady_state(vdp_model(1.0, 0.1, n).liouvillian());
    const DensityMatrix b = steady_state(vdp_model(1.0, 0.11, n).liouvillian());
    for (auto _ : state) benchmark::DoNotOptimize(uhlmann_fidelity(a, b));
}
BENCHMARK(BM_UhlmannFidelity)->Arg(10)->Arg(30)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
