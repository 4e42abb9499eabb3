#include <benchmark/benchmark.h>

#include "prabhakar/cq_solver.hpp"
#include "prabhakar/special_fn.hpp"
#include "prabhakar/stability.hpp"

namespace {

using namespace prabhakar;

const PrabhakarParams kP{0.8, 0.9, 0.8, -1.0};

void BM_EvalSeries(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(prabhakar_eval(0.8, 0.9, 0.8, Complex(-5.0, 1.0)));
}
BENCHMARK(BM_EvalSeries);

void BM_EvalAsymptotic(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(prabhakar_eval(0.8, 0.9, 0.8, Complex(-150.0, 0.0)));
}
BENCHMARK(BM_EvalAsymptotic);

void BM_Classify(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classify(kP, Complex(0.866, 1.171)));
}
BENCHMARK(BM_Classify);

void BM_CountUnstableRoots(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(count_unstable_roots(kP, Complex(0.936, 1.151)));
}
BENCHMARK(BM_CountUnstableRoots);

void BM_ConvWeights(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(conv_weights(kP, 50.0 / N, N));
}
BENCHMARK(BM_ConvWeights)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)->Unit(benchmark::kMillisecond);

void BM_SolveScalar(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const FdeSystem sys = linear_system(Eigen::MatrixXcd::Constant(1, 1, Complex(0.866, 1.171)),
                                      State::Constant(1, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(solve(sys, kP, 50.0 / N, N));
}
BENCHMARK(BM_SolveScalar)->RangeMultiplier(4)->Range(1 << 9, 1 << 13)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
