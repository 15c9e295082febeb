#include <benchmark/benchmark.h>

#include <string>

#include "swarmlab/analytic.hpp"
#include "swarmlab/schedule.hpp"
#include "swarmlab/simulator.hpp"
#include "swarmlab/trace.hpp"

using namespace swarmlab;

static void BM_ExpectedBusyPeriod(benchmark::State& state) {
    SwarmParams p{1.0, 1.0, 0.2, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(expected_busy_period(p));
        p.peer_rate = p.peer_rate < 5.0 ? p.peer_rate + 1e-3 : 1.0;
    }
}
BENCHMARK(BM_ExpectedBusyPeriod);

static void BM_RunBusyPeriods(benchmark::State& state) {
    const SwarmParams p{1.0, 1.0, 0.2, static_cast<double>(state.range(0)) / 10.0};
    SimConfig c;
    c.seed = 1;
    c.replications = 10000;
    c.threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(run_busy_periods(p, c).stats.mean);
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(c.replications));
}
BENCHMARK(BM_RunBusyPeriods)->Args({10, 1})->Args({28, 1})->Args({28, 4})->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_ProfileSim(benchmark::State& state) {
    const SwarmParams p{1.0, 1.0, 0.2, 1.0};
    const auto profile = ArrivalProfile::piecewise({{36.0, 1.0, 10.0}, {64.0, 0.1, 1.0}});
    SimConfig c;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_profile_sim(p, profile, 100.0, c, 1.0).max_holders);
        ++c.seed;
    }
}
BENCHMARK(BM_ProfileSim);

static void BM_BuildVerifySchedule(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(verify_schedule(build_schedule(n, n)).all_complete());
}
BENCHMARK(BM_BuildVerifySchedule)->RangeMultiplier(4)->Range(4, 256);

static void BM_ParseTrace(benchmark::State& state) {
    std::string text = "timestamp,seeders,leechers\n";
    for (int day = 1; day <= 28; ++day) {
        for (int hour = 0; hour < 24; ++hour) {
            char row[64];
            std::snprintf(row, sizeof row, "2010-02-%02dT%02d:00:00,%d,%d\n", day, hour, 1000 + hour, 500 + day);
            text += row;
        }
    }
    for (auto _ : state) benchmark::DoNotOptimize(parse_trace(text).size());
    state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_ParseTrace);
BENCHMARK_MAIN();
