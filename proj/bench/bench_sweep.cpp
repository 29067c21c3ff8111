#include <benchmark/benchmark.h>

#include "lucky/counting.hpp"
#include "lucky/oracle.hpp"

namespace {

void BM_ClassifySerial(benchmark::State& state)
{
    const auto shape = lucky::StreetShape::square(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lucky::oracle::classify_all_serial(shape));
}

void BM_ClassifyParallel(benchmark::State& state)
{
    const auto shape = lucky::StreetShape::square(static_cast<int>(state.range(0)));
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(lucky::oracle::classify_all(shape, lucky::oracle::Filter::kAll, {threads}));
}

void BM_CountLpfSerial(benchmark::State& state)
{
    const auto shape = lucky::StreetShape::square(static_cast<int>(state.range(0)));
    const auto lucky = lucky::LuckySet({1});
    for (auto _ : state) benchmark::DoNotOptimize(lucky::count_lpf_serial(shape, lucky));
}

void BM_CountLpfParallel(benchmark::State& state)
{
    const auto shape = lucky::StreetShape::square(static_cast<int>(state.range(0)));
    const auto lucky = lucky::LuckySet({1});
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(lucky::count_lpf(shape, lucky, threads));
}

}  // namespace

BENCHMARK(BM_ClassifySerial)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifyParallel)->ArgsProduct({{5, 6, 7}, {1, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CountLpfSerial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountLpfParallel)->ArgsProduct({{8, 10}, {1, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
