#include "wavematch/compress.hpp"
#include "wavematch/filterbank.hpp"
#include "wavematch/matcher.hpp"
#include "wavematch/scales.hpp"
#include "wavematch/transform.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace wavematch;

namespace {

std::vector<double> noise(std::size_t n) {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> d;
    std::vector<double> x(n);
    for (auto& v : x) {
        v = d(rng);
    }
    return x;
}

void BM_Dwt(benchmark::State& state) {
    const auto x = noise(static_cast<std::size_t>(state.range(0)));
    const auto f = standard_filter(NamedWavelet::Daubechies3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dwt(x, f, {7}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Dwt)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_DwtIdwt(benchmark::State& state) {
    const auto x = noise(4096);
    const auto f = pollen_filter({1.36, -0.78});
    for (auto _ : state) {
        benchmark::DoNotOptimize(idwt(dwt(x, f, {7}), f));
    }
}
BENCHMARK(BM_DwtIdwt);

void BM_CompressAndMeasure(benchmark::State& state) {
    const auto x = noise(4096);
    const auto f = standard_filter(NamedWavelet::Coiflet1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compress_and_measure(x, f, {7}, {5.0}));
    }
}
BENCHMARK(BM_CompressAndMeasure);

void BM_CenterFrequency(benchmark::State& state) {
    const auto f = pollen_filter({0.9, -0.4});
    for (auto _ : state) {
        benchmark::DoNotOptimize(center_frequency(f));
    }
}
BENCHMARK(BM_CenterFrequency);

void BM_Surface(benchmark::State& state) {
    const Signal x{noise(4096)};
    SurfaceOptions opts;
    opts.grid.resolution = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(prd_surface(x, opts));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Surface)->Arg(9)->Arg(17)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
