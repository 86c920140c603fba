#include <vector>

#include <benchmark/benchmark.h>

#include "wpvol/intersection.hpp"
#include "wpvol/random_model.hpp"
#include "wpvol/volumes.hpp"

using namespace wpvol;

// Cold warm-up of the bracket cache at a given budget and thread count.
static void BM_Warm(benchmark::State& state) {
    const int budget = static_cast<int>(state.range(0));
    const unsigned threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) {
        BracketEngine e(budget);
        e.warm(budget, threads);
        benchmark::DoNotOptimize(e.cache().size());
    }
}
BENCHMARK(BM_Warm)->Args({8, 1})->Args({12, 1})->Args({12, 4})->Unit(benchmark::kMillisecond);

static void BM_VolumeAt(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    BracketEngine e(3 + n);
    e.warm(3 + n);
    std::vector<PiPoly> x;
    for (int i = 0; i < n; ++i) x.emplace_back(Rat(i + 1, 3));
    for (auto _ : state) benchmark::DoNotOptimize(volume_at(e, 2, n, x));
}
BENCHMARK(BM_VolumeAt)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

static void BM_FactorialMoment(benchmark::State& state) {
    BracketEngine e(14);
    e.warm(14);
    const auto L = CutoffLength::times_pi(Rat(1, 5));
    const int r = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(factorial_moment(e, 3, 8, r, L));
}
BENCHMARK(BM_FactorialMoment)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
