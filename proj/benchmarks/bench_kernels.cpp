#include <benchmark/benchmark.h>

#include "ruincap/approx.hpp"
#include "ruincap/capital.hpp"
#include "ruincap/exact.hpp"
#include "ruincap/montecarlo.hpp"
#include "ruincap/special.hpp"

using namespace ruincap;

namespace {
const RiskModel unit{Distribution::exponential(1.0), Distribution::exponential(1.0)};
const ExpPair unit_pair{1.0, 1.0};
}  // namespace

static void BM_BesselI1Scaled(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(special::bessel_i1_scaled(x));
        x = x < 500.0 ? x * 1.01 : 0.1;
    }
}
BENCHMARK(BM_BesselI1Scaled);

static void BM_AggregateCdf(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(exact::aggregate_cdf_exp(unit_pair, 200.0, 240.0));
}
BENCHMARK(BM_AggregateCdf);

static void BM_ExactRuin(benchmark::State& state) {
    const double u = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(exact::ruin_finite_exp(unit_pair, u, 1.0, 1000.0));
}
BENCHMARK(BM_ExactRuin)->Arg(10)->Arg(50)->Arg(140);

static void BM_IgClosed(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(approx::ig_ruin_probability(1.0, 2.0, 50.0, 1.1, 1000.0, approx::IGForm::closed));
    }
}
BENCHMARK(BM_IgClosed);

static void BM_IgIntegral(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(approx::ig_ruin_probability(1.0, 2.0, 50.0, 1.1, 1000.0, approx::IGForm::integral));
    }
}
BENCHMARK(BM_IgIntegral);

static void BM_SimulatePath(benchmark::State& state) {
    std::uint64_t i = 0;
    for (auto _ : state) {
        RandomStream rng(20240601, i % 64, i / 64);
        benchmark::DoNotOptimize(mc::simulate_path(unit, 1.0, 200.0, rng));
        ++i;
    }
}
BENCHMARK(BM_SimulatePath);

static void BM_NonruinCapitalExact(benchmark::State& state) {
    capital::SolveSpec spec;
    for (auto _ : state) {
        benchmark::DoNotOptimize(capital::nonruin_capital(unit, Probability(0.05), 200.0, 1.0, spec));
    }
}
BENCHMARK(BM_NonruinCapitalExact)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
