#include <benchmark/benchmark.h>

#include <random>

#include "hazekit/dcp.hpp"
#include "hazekit/dehaze.hpp"
#include "hazekit/kernels.hpp"
#include "hazekit/reference.hpp"

using namespace hazekit;

namespace {

GrayMap bench_map(int n) {
    std::mt19937_64 eng(7);
    GrayMap m(n, n);
    for (double& v : m.data) v = double(eng() >> 11) * 0x1.0p-53;
    return m;
}

RgbImage bench_image(int n) {
    std::mt19937_64 eng(11);
    RgbImage img(n, n);
    for (double& v : img.data) v = double(eng() >> 11) * 0x1.0p-53;
    return img;
}

}  // namespace

static void BM_min_filter(benchmark::State& state) {
    const GrayMap map = bench_map(int(state.range(0)));
    const int r = int(state.range(1));
    for (auto _ : state) {
        GrayMap out = min_filter(map, r);
        benchmark::DoNotOptimize(out.data.data());
    }
}
BENCHMARK(BM_min_filter)->Args({512, 4})->Args({1024, 4})->Unit(benchmark::kMillisecond);

static void BM_min_filter_serial_ref(benchmark::State& state) {
    const GrayMap map = bench_map(int(state.range(0)));
    const int r = int(state.range(1));
    for (auto _ : state) {
        GrayMap out = reference::min_filter(map, r);
        benchmark::DoNotOptimize(out.data.data());
    }
}
BENCHMARK(BM_min_filter_serial_ref)->Args({512, 4})->Unit(benchmark::kMillisecond);

static void BM_box_mean_filter(benchmark::State& state) {
    const GrayMap map = bench_map(int(state.range(0)));
    const int r = int(state.range(1));
    for (auto _ : state) {
        GrayMap out = box_mean_filter(map, r);
        benchmark::DoNotOptimize(out.data.data());
    }
}
BENCHMARK(BM_box_mean_filter)->Args({512, 15})->Args({1024, 15})->Unit(benchmark::kMillisecond);

static void BM_box_mean_filter_serial_ref(benchmark::State& state) {
    const GrayMap map = bench_map(int(state.range(0)));
    const int r = int(state.range(1));
    for (auto _ : state) {
        GrayMap out = reference::box_mean_filter(map, r);
        benchmark::DoNotOptimize(out.data.data());
    }
}
BENCHMARK(BM_box_mean_filter_serial_ref)->Args({512, 15})->Unit(benchmark::kMillisecond);

static void BM_guided_filter(benchmark::State& state) {
    const int n = int(state.range(0));
    const GrayMap input = bench_map(n);
    const GrayMap guide = channel_mean(bench_image(n));
    const FilterParams params{int(state.range(1)), 1e-3};
    for (auto _ : state) {
        GrayMap out = guided_filter(guide, input, params);
        benchmark::DoNotOptimize(out.data.data());
    }
}
BENCHMARK(BM_guided_filter)->Args({512, 30})->Args({1024, 30})->Unit(benchmark::kMillisecond);

static void BM_guided_filter_serial_ref(benchmark::State& state) {
    const int n = int(state.range(0));
    const GrayMap input = bench_map(n);
    const GrayMap guide = channel_mean(bench_image(n));
    for (auto _ : state) {
        GrayMap out = reference::guided_filter(guide, input, int(state.range(1)), 1e-3);
        benchmark::DoNotOptimize(out.data.data());
    }
}
// the brute-force window scan is quadratic in the radius; keep it small
BENCHMARK(BM_guided_filter_serial_ref)->Args({256, 7})->Unit(benchmark::kMillisecond);

static void BM_dark_channel(benchmark::State& state) {
    const RgbImage img = bench_image(int(state.range(0)));
    for (auto _ : state) {
        GrayMap out = dark_channel(img, 4);
        benchmark::DoNotOptimize(out.data.data());
    }
}
BENCHMARK(BM_dark_channel)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_dark_channel_serial_ref(benchmark::State& state) {
    const RgbImage img = bench_image(int(state.range(0)));
    for (auto _ : state) {
        GrayMap out = reference::dark_channel(img, 4);
        benchmark::DoNotOptimize(out.data.data());
    }
}
BENCHMARK(BM_dark_channel_serial_ref)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_dehaze_pipeline(benchmark::State& state) {
    const RgbImage img = bench_image(int(state.range(0)));
    const DehazeParams params;
    for (auto _ : state) {
        DehazeResult res = dehaze_pipeline(img, params);
        benchmark::DoNotOptimize(res.radiance.data.data());
    }
}
BENCHMARK(BM_dehaze_pipeline)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
