// Serial reference kernels vs their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "tstd/dsl.hpp"
#include "tstd/executor.hpp"
#include "tstd/random.hpp"

namespace {

using namespace tstd;

// A strong spec is never refuted, so every trial runs to completion.
TSTDSpec strong_spec()
{
    return *parse_component(R"(component Counter
in chan req
out chan ack
var n = 0
state Idle initial
state Busy
trans Idle -> Busy
  when req: nonempty
  emit ack: []
  set n := n + 1
trans Idle -> Idle
  emit ack: []
trans Busy -> Idle
  emit ack: [ok]
)").value;
}

std::vector<Trace> batch(const TSTDSpec& spec, std::size_t count)
{
    Rng rng(1);
    std::vector<Trace> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(random_trace(rng, spec.inputs(), 256, 3, {"a", "b", "c"}));
    return out;
}

void BM_probe_serial(benchmark::State& state)
{
    const TSTDSpec spec = strong_spec();
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::probe_causality(spec, state.range(0), 64, 0));
}

void BM_probe_parallel(benchmark::State& state)
{
    const TSTDSpec spec = strong_spec();
    for (auto _ : state)
        benchmark::DoNotOptimize(probe_causality(spec, state.range(0), 64, 0));
}

void BM_batch_serial(benchmark::State& state)
{
    const TSTDSpec spec = strong_spec();
    const auto inputs = batch(spec, state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(serial::run_batch(spec, inputs));
}

void BM_batch_parallel(benchmark::State& state)
{
    const TSTDSpec spec = strong_spec();
    const auto inputs = batch(spec, state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_batch(spec, inputs));
}

}  // namespace

BENCHMARK(BM_probe_serial)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_probe_parallel)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_batch_serial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_batch_parallel)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
