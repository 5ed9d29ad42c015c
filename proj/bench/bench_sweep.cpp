// Serial reference sweep against the OpenMP sweep on the same box of degrees.
// Thread count follows BREDON_THREADS (default: OpenMP's choice).

#include "bredon/frontend.hpp"
#include "bredon/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace bredon;

namespace {

SweepOptions box(long n, int w)
{
    SweepOptions o;
    o.n = n;
    o.max_weight = w;
    o.max_m = 8;
    return o;
}

void BM_SweepSerial(benchmark::State& state)
{
    auto opts = box(state.range(0), static_cast<int>(state.range(1)));
    size_t degrees = 0;
    for (auto _ : state) {
        auto r = sweep_serial(opts);
        degrees = r.degrees;
        benchmark::DoNotOptimize(r);
    }
    state.counters["degrees"] = static_cast<double>(degrees);
}

void BM_SweepParallel(benchmark::State& state)
{
    auto opts = box(state.range(0), static_cast<int>(state.range(1)));
    size_t degrees = 0;
    for (auto _ : state) {
        auto r = sweep_parallel(opts);
        degrees = r.degrees;
        benchmark::DoNotOptimize(r);
    }
    state.counters["degrees"] = static_cast<double>(degrees);
    state.counters["threads"] = configured_threads();
}

void BM_ChartC9(benchmark::State& state)
{
    auto spec = ChartSpec::standard(9);
    spec.r_lo = -4, spec.r_hi = 4, spec.k_lo = -4, spec.k_hi = 4;
    for (auto _ : state) benchmark::DoNotOptimize(compute_chart(spec));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Args({9, 3})->Args({15, 3})->Args({45, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Args({9, 3})->Args({15, 3})->Args({45, 2})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ChartC9)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
