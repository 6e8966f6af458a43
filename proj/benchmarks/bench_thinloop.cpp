#include <benchmark/benchmark.h>

#include <memory>

#include "thinloop/connection.hpp"
#include "thinloop/fusion.hpp"
#include "thinloop/transgression.hpp"

using namespace thinloop;

namespace {

ComplexPtr complex_for(std::uint64_t seed, std::size_t max_edges = 16)
{
    RandomComplexLimits lim;
    lim.max_edges = max_edges;
    lim.max_extra_per_vertex = 2;
    return std::make_shared<const Complex>(Complex::build(random_complex(seed, lim)));
}

} // namespace

static void BM_EnumerateLoops(benchmark::State& state)
{
    const auto c = complex_for(5);
    const auto len = static_cast<std::size_t>(state.range(0));
    std::size_t count = 0;
    for (auto _ : state) {
        count = enumerate_loops(*c, len).size();
        benchmark::DoNotOptimize(count);
    }
    state.counters["loops"] = static_cast<double>(count);
}
BENCHMARK(BM_EnumerateLoops)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_ValidateFusion(benchmark::State& state)
{
    const auto c = complex_for(3, 6);
    const auto group = parse_group_spec("Zn:2xU1");
    const auto t = random_connection(group, c, 1);
    const LoopFunction fn = [&](const ThinLoop& l) { return holonomy(t, l); };
    const auto len = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(validate_fusion(fn, group, *c, len));
}
BENCHMARK(BM_ValidateFusion)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

static void BM_RegressViaDescent(benchmark::State& state)
{
    const auto c = complex_for(11, 8);
    const auto f = random_fusion_map(c, GroupSpec::cyclic(4), 0, 2);
    const auto len = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(regress_via_descent(f, 0, len));
}
BENCHMARK(BM_RegressViaDescent)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_RoundTripFusion(benchmark::State& state)
{
    const auto c = complex_for(static_cast<std::uint64_t>(state.range(0)));
    const auto f = random_fusion_map(c, parse_group_spec("Zn:2xU1"), 0, 9);
    for (auto _ : state)
        benchmark::DoNotOptimize(roundtrip_fusion(f));
}
BENCHMARK(BM_RoundTripFusion)->Arg(1)->Arg(7)->Arg(42)->Unit(benchmark::kMillisecond);

static void BM_RoundTripBundle(benchmark::State& state)
{
    const auto c = complex_for(static_cast<std::uint64_t>(state.range(0)));
    const auto t = random_connection(parse_group_spec("ZxU1"), c, 9);
    for (auto _ : state)
        benchmark::DoNotOptimize(roundtrip_bundle(t));
}
BENCHMARK(BM_RoundTripBundle)->Arg(1)->Arg(7)->Arg(42);
BENCHMARK_MAIN();
