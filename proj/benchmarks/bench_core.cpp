#include <benchmark/benchmark.h>

#include "nmland/analysis.hpp"
#include "nmland/builders.hpp"
#include "nmland/enumerate.hpp"
#include "nmland/search.hpp"

using namespace nmland;

namespace {

void BM_evaluate_generic(benchmark::State& state) {
    const InteractionModel m = build_type1_complete(12, state.range(0), 10.0, 1);
    const Point x(12, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(m, x));
    state.SetLabel(std::to_string(m.term_count()) + " terms");
}
BENCHMARK(BM_evaluate_generic)->Arg(2)->Arg(4)->Arg(12);

void BM_evaluate_binary_masks(benchmark::State& state) {
    const InteractionModel m = build_type3(32, static_cast<int>(state.range(0)), 32.0, 1);
    const BinaryEvaluator eval(m);
    std::uint64_t genome = 0x5a5a5a5aull;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval(genome));
        genome = genome * 6364136223846793005ull + 1;
    }
    state.SetLabel(std::to_string(m.term_count()) + " terms");
}
BENCHMARK(BM_evaluate_binary_masks)->Arg(1)->Arg(3)->Arg(5);

void BM_enumerate_master(benchmark::State& state) {
    const InteractionModel master = build_type1_master(static_cast<int>(state.range(0)), 10.0, 1);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate(master).fitness.back());
}
BENCHMARK(BM_enumerate_master)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_count_peaks(benchmark::State& state) {
    const EvaluatedLandscape el = enumerate(build_type1_master(static_cast<int>(state.range(0)), 10.0, 1));
    for (auto _ : state) benchmark::DoNotOptimize(count_local_peaks(el));
}
BENCHMARK(BM_count_peaks)->Arg(10)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_random_walk(benchmark::State& state) {
    const EvaluatedLandscape el = enumerate(build_type1_master(10, 10.0, 1));
    Rng rng(7);
    for (auto _ : state) benchmark::DoNotOptimize(random_walk(el, 10000, rng).back());
}
BENCHMARK(BM_random_walk)->Unit(benchmark::kMicrosecond);

void BM_basin_fraction(benchmark::State& state) {
    const EvaluatedLandscape el = enumerate(build_type1_complete(10, 4, 10.0, 1));
    for (auto _ : state) benchmark::DoNotOptimize(basin_fraction(el));
}
BENCHMARK(BM_basin_fraction)->Unit(benchmark::kMicrosecond);

void BM_ga_generation(benchmark::State& state) {
    const InteractionModel m = build_type3(32, 3, 32.0, 1);
    GaConfig config;
    config.generations = 1;
    config.runs = 1;
    std::uint64_t seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(ga_run(m, config, seed++).best_fitness);
    state.SetLabel(std::to_string(m.term_count()) + " terms, pop 256");
}
BENCHMARK(BM_ga_generation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
