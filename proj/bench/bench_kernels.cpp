// Parallel kernels against their serial references. Thread count follows
// OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "hartogs/kernels.hpp"

using namespace hartogs;

namespace {

const EngineConfig kCfg{};

ProblemSpec annulus_spec() { return {make_plane(), make_annulus(0.0, 0.2, 2.0), make_const_one()}; }

std::vector<double> fan_angles(int n) {
    std::vector<double> th(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) th[i] = 2.0 * std::numbers::pi * i / n;
    return th;
}

std::vector<Cx> ring_points(int n) {
    std::vector<Cx> pts;
    for (int i = 0; i < n; ++i) pts.push_back(std::polar(0.3 + 1.5 * i / n, 2.0 * std::numbers::pi * i / n));
    return pts;
}

void BM_fan(benchmark::State& st) {
    const ProblemSpec spec{make_plane(), make_plane(), make_exp()};
    const auto th = fan_angles(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(trace_fan(spec, Cx(0.5, 0.2), th, kCfg));
}

void BM_fan_serial(benchmark::State& st) {
    const ProblemSpec spec{make_plane(), make_plane(), make_exp()};
    const auto th = fan_angles(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(trace_fan_serial(spec, Cx(0.5, 0.2), th, kCfg));
}

void BM_points(benchmark::State& st) {
    const auto spec = annulus_spec();
    const auto pts = ring_points(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(rho_at_points(spec, pts, kCfg));
}

void BM_points_serial(benchmark::State& st) {
    const auto spec = annulus_spec();
    const auto pts = ring_points(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(rho_at_points_serial(spec, pts, kCfg));
}

void BM_field(benchmark::State& st) {
    const auto spec = annulus_spec();
    const int n = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(rho_field(spec, {-2, -2}, {2, 2}, n, n, kCfg));
}

void BM_field_serial(benchmark::State& st) {
    const auto spec = annulus_spec();
    const int n = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(rho_field_serial(spec, {-2, -2}, {2, 2}, n, n, kCfg));
}

void BM_phi(benchmark::State& st) {
    const ProblemSpec spec{make_plane(), make_plane(), make_exp()};
    std::vector<Cx> z;
    for (int i = 0; i < st.range(0); ++i) z.push_back(std::polar(0.5, 2.0 * std::numbers::pi * i / st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(phi_at_points(spec, 0.0, z, kCfg));
}

void BM_phi_serial(benchmark::State& st) {
    const ProblemSpec spec{make_plane(), make_plane(), make_exp()};
    std::vector<Cx> z;
    for (int i = 0; i < st.range(0); ++i) z.push_back(std::polar(0.5, 2.0 * std::numbers::pi * i / st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(phi_at_points_serial(spec, 0.0, z, kCfg));
}

}  // namespace

BENCHMARK(BM_fan)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_fan_serial)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_points)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_points_serial)->Arg(32)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_field)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_field_serial)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_phi)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_phi_serial)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
