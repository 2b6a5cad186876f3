// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS set to the
// core count; on a single core the two should match within noise.

#include "omspec/spectra.hpp"
#include "omspec/trajectory.hpp"

#include <benchmark/benchmark.h>

using namespace omspec;

namespace {

const SystemParams kStandard{1.0, 1.25, 0.25};

void closed_form_scan(benchmark::State& state, Execution exec) {
    const auto deltas = linspace(-5.0, 5.0, static_cast<std::size_t>(state.range(0)));
    const PointFunction f = [](double d) { return closed_form_thermal_2ph(kStandard, {0.1, 0.8}, {d, 0.1}); };
    for (auto _ : state) benchmark::DoNotOptimize(scan(f, deltas, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void numeric_spectrum(benchmark::State& state, Execution exec) {
    const auto deltas = linspace(-3.0, 3.0, static_cast<std::size_t>(state.range(0)));
    LongTimeOptions opt;
    opt.execution = exec;
    for (auto _ : state) benchmark::DoNotOptimize(stationary_spectrum_numeric(kStandard, {}, 0.1, 1, 0, deltas, opt));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void filter_map(benchmark::State& state, Execution exec) {
    const auto deltas = linspace(-3.0, 3.0, static_cast<std::size_t>(state.range(0)));
    const auto times = uniform_time_grid(30.0, 301);
    for (auto _ : state) benchmark::DoNotOptimize(time_dependent_map(kStandard, {}, 0.1, 1, 0, deltas, times, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void ensemble(benchmark::State& state, Execution exec) {
    EnsembleSpec spec;
    spec.params = kStandard;
    spec.bath = {0.1, 0.8};
    spec.m_max = 3;
    spec.t_max = 20.0;
    spec.count = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_ensemble(spec, exec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(closed_form_scan, serial, Execution::serial)->Arg(667)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(closed_form_scan, parallel, Execution::parallel)->Arg(667)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(numeric_spectrum, serial, Execution::serial)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(numeric_spectrum, parallel, Execution::parallel)->Arg(201)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(filter_map, serial, Execution::serial)->Arg(101)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(filter_map, parallel, Execution::parallel)->Arg(101)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(ensemble, serial, Execution::serial)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(ensemble, parallel, Execution::parallel)->Arg(500)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
