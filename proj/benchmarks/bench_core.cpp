#include "finsec/analyzer.hpp"
#include "finsec/geometry.hpp"
#include "finsec/numerics/discretize.hpp"
#include "finsec/numerics/pnorm.hpp"
#include "finsec/numerics/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace finsec;

namespace {

void BM_LensContains(benchmark::State& state) {
    const double p = 3.0;
    std::size_t inside = 0;
    for (auto _ : state) {
        for (int i = 0; i < 64; ++i)
            for (int j = 0; j < 64; ++j)
                inside += geometry::lens_contains(p, complex{-0.5 + 2.0 * i / 63.0, -1.0 + 2.0 * j / 63.0});
        benchmark::DoNotOptimize(inside);
    }
    state.SetItemsProcessed(state.iterations() * 64 * 64);
}
BENCHMARK(BM_LensContains);

void BM_Winding(benchmark::State& state) {
    const auto curve = geometry::triple_curve(2.5, 1.0, complex{-1.0, 1.0}, complex{-1.0, -1.0});
    for (auto _ : state) benchmark::DoNotOptimize(geometry::winding_about_origin(curve));
}
BENCHMARK(BM_Winding);

void BM_ConvolutionMatrix(benchmark::State& state) {
    const numerics::Grid g(20.0, static_cast<int>(state.range(0)), 4);
    const auto b = PCSOSymbol::from_step(StepFunction::chi_minus());
    for (auto _ : state) benchmark::DoNotOptimize(numerics::convolution_matrix(b, g).data());
}
BENCHMARK(BM_ConvolutionMatrix)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_PNormEstimate(benchmark::State& state) {
    const numerics::Grid g(20.0, static_cast<int>(state.range(0)), 4);
    const auto a = numerics::convolution_matrix(PCSOSymbol::from_step(StepFunction::chi_minus()), g);
    numerics::PNormOptions opt;
    opt.p = 3.0;
    for (auto _ : state) benchmark::DoNotOptimize(numerics::estimate_pnorm(a, opt));
}
BENCHMARK(BM_PNormEstimate)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_CondSweep(benchmark::State& state) {
    const auto a = OperatorExpr::paired(PCSOSymbol::constant(1.0), PCSOSymbol::constant(-1.0));
    const numerics::GridPolicy policy{256, 2, 2.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(numerics::cond_sweep(a, {5.0, 10.0, 20.0}, 2.0, policy, 1, 1).cond_ratio);
}
BENCHMARK(BM_CondSweep)->Unit(benchmark::kMillisecond);

void BM_FsmCheckPaired(benchmark::State& state) {
    const auto a = OperatorExpr::paired(PCSOSymbol::from_step(StepFunction::chi_minus()), PCSOSymbol::constant(2.0));
    AnalyzerConfig cfg;
    cfg.p = cfg.decide.p = 3.0;
    for (auto _ : state) benchmark::DoNotOptimize(fsm_check(a, cfg).verdict);
}
BENCHMARK(BM_FsmCheckPaired)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
