#include <benchmark/benchmark.h>

#include "ultra/fourier.hpp"
#include "ultra/integrate.hpp"
#include "ultra/operators.hpp"

using namespace ultra;

namespace {

Exec policy(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

TestFunction sample(const FieldParams& fp, int m, int k) {
    return TestFunction::from_function(fp, -m, k, [&](const Point& x) {
        return Complex(Scalar(x.coordinate(0)));
    });
}

void BM_RieszTable(benchmark::State& state) {
    auto fp = FieldParams::make(3);
    auto params = OperatorParams::make(fp, Exponent::parse("0.5"));
    auto phi = sample(fp, 1, 4);
    for (auto _ : state) benchmark::DoNotOptimize(riesz_potential(params, phi, policy(state)));
}

void BM_FourierTransform(benchmark::State& state) {
    auto fp = FieldParams::make(3);
    auto f = sample(fp, 2, 3);
    for (auto _ : state) benchmark::DoNotOptimize(fourier_transform(f, false, policy(state)));
}

void BM_FullOracle(benchmark::State& state) {
    auto fp = FieldParams::make(2);
    Sampler s = [&](const Point& x) { return Scalar::from_double(1.0 / (1.0 + x.coordinate(0).get_d())); };
    OracleOptions opt;
    opt.resolution = 14;
    opt.full_depth = 14;
    opt.exec = policy(state);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_oracle(fp, s, Region::Ball, Point::zero(fp), 0, opt));
}

void BM_InversionResidual(benchmark::State& state) {
    auto fp = FieldParams::make(2);
    auto params = OperatorParams::make(fp, Exponent::parse("0.5"));
    auto phi = sample(fp, 2, 5);
    for (auto _ : state) benchmark::DoNotOptimize(inversion_residual(params, 1.0, phi, 2, policy(state)));
}

}  // namespace

BENCHMARK(BM_RieszTable)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FourierTransform)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FullOracle)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_InversionResidual)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
