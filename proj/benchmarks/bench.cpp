#include <benchmark/benchmark.h>

#include <random>

#include "bcct/spaces.hpp"
#include "bcct/suites.hpp"
#include "bcct/transforms.hpp"

using namespace bcct;

namespace {

const SuiteContext& ctx() {
    static const SuiteContext c = default_context();
    return c;
}

void BM_whitney(benchmark::State& s) {
    const auto& E = ctx().sets.back().set;  // geometric, 16 gaps
    for (auto _ : s) benchmark::DoNotOptimize(whitney_decompose(E, static_cast<int>(s.range(0))));
}
BENCHMARK(BM_whitney)->Arg(8)->Arg(16)->Arg(24);

void BM_cutoff_boundary(benchmark::State& s) {
    const CutoffFunction c(ctx().set);
    for (auto _ : s) benchmark::DoNotOptimize(c.boundary_g(static_cast<int>(s.range(0))));
}
BENCHMARK(BM_cutoff_boundary)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_outer_boundary(benchmark::State& s) {
    const OuterFunction W(make_weight(ctx().set, ctx().weight.levels, ctx().weight.bumps));
    for (auto _ : s) benchmark::DoNotOptimize(W.boundary(static_cast<int>(s.range(0))));
}
BENCHMARK(BM_outer_boundary)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_dft(benchmark::State& s) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd;
    std::vector<cplx> x(std::size_t{1} << s.range(0));
    for (auto& v : x) v = cplx(nd(rng), nd(rng));
    for (auto _ : s) benchmark::DoNotOptimize(dft(x));
}
BENCHMARK(BM_dft)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_toeplitz_norm(benchmark::State& s) {
    std::vector<cplx> c(65);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = 1.0 / double(k + 1);
    const AnalyticSeries h(c);
    const auto a = rapid_weight(ctx().coefficients, 4);
    const int d = static_cast<int>(s.range(0));
    for (auto _ : s) benchmark::DoNotOptimize(toeplitz_norm(h, d, ToeplitzMode::co_analytic, a));
}
BENCHMARK(BM_toeplitz_norm)->Arg(32)->Arg(63);

}  // namespace

BENCHMARK_MAIN();
