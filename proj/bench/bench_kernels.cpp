#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "bosegas/moments.hpp"
#include "bosegas/parallel.hpp"
#include "bosegas/quadrature.hpp"
#include "bosegas/she_mc.hpp"

using namespace bosegas;

namespace {

struct NestedSetup {
    std::vector<LineSpec> lines;
    Integrand f;
    int n;
};

NestedSetup nested_setup(int n, double t) {
    const SpacePoints x(std::vector<double>(static_cast<std::size_t>(n), 0.0));
    const auto a = default_nested_abscissae(n, t, x);
    ContourPlan plan;
    plan.nodes_per_line = n == 2 ? 257 : 65;
    NestedSetup s;
    s.n = n;
    for (double ak : a) s.lines.push_back({ak, auto_half_width(t / 2.0, plan), t / 2.0});
    s.f = [n, t](std::span<const Complex> z) {
        Complex prod = 1.0;
        Complex expo = 0.0;
        for (int i = 0; i < n; ++i) {
            expo += 0.5 * t * z[i] * z[i];
            for (int j = i + 1; j < n; ++j) prod *= (z[i] - z[j]) / (z[i] - z[j] - 1.0);
        }
        return ScaledComplex::exp_of(expo) * ScaledComplex::from_complex(prod);
    };
    return s;
}

void BM_nested_serial(benchmark::State& state) {
    const auto s = nested_setup(static_cast<int>(state.range(0)), 1.0);
    const int nodes = s.n == 2 ? 257 : 65;
    for (auto _ : state) benchmark::DoNotOptimize(integrate_lines_serial(s.f, s.lines, nodes));
}

void BM_nested_parallel(benchmark::State& state) {
    const auto s = nested_setup(static_cast<int>(state.range(0)), 1.0);
    const int nodes = s.n == 2 ? 257 : 65;
    for (auto _ : state) benchmark::DoNotOptimize(integrate_lines(s.f, s.lines, nodes));
}

GridSpec mc_grid() {
    const double dx = 0.05;
    return {dx, 0.5 * dx * dx, minimal_half_width(dx, 0.5, 0.0), 0.5};
}

void BM_mc_serial(benchmark::State& state) {
    const std::vector<SpacePoints> sets{SpacePoints{0.0}};
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_moments_serial(mc_grid(), sets, static_cast<std::size_t>(state.range(0)), 7));
}

void BM_mc_parallel(benchmark::State& state) {
    const std::vector<SpacePoints> sets{SpacePoints{0.0}};
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_moments(mc_grid(), sets, static_cast<std::size_t>(state.range(0)), 7));
}

}  // namespace

BENCHMARK(BM_nested_serial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_nested_parallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_serial)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_parallel)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
