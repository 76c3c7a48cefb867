// Serial references against the OpenMP kernels: census count, point search, Harari scan.
// The thread count is the benchmark argument; 0 selects the serial reference.

#include <benchmark/benchmark.h>

#include "orbarith/census.hpp"
#include "orbarith/registry.hpp"

using namespace orbarith;

namespace {

void census_count(benchmark::State& state) {
    const int jobs = static_cast<int>(state.range(0));
    const std::uint64_t B = 100'000'000;
    for (auto _ : state) benchmark::DoNotOptimize(jobs ? count_members(B, jobs) : count_members_serial(B));
}

void point_search(benchmark::State& state) {
    const int jobs = static_cast<int>(state.range(0));
    const auto& M = find_example("dwa").model.model;
    SearchOptions so;
    so.height = 60;
    so.flag = PointFlag::Darmon;
    so.jobs = jobs;
    for (auto _ : state) benchmark::DoNotOptimize(jobs ? search_points(M, so) : search_points_serial(M, so));
}

void harari(benchmark::State& state) {
    const int jobs = static_cast<int>(state.range(0));
    const auto& mf = find_example("quadrics-even").model;
    for (auto _ : state) {
        auto h = jobs ? harari_scan(*mf.cls, mf.model, Mode::campana(2), 2, 200, {}, jobs)
                      : harari_scan_serial(*mf.cls, mf.model, Mode::campana(2), 2, 200);
        benchmark::DoNotOptimize(h);
    }
}

}  // namespace

BENCHMARK(census_count)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(point_search)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(harari)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
