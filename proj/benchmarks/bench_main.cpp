#include <benchmark/benchmark.h>

#include "kdvg/gevrey_ops.hpp"
#include "kdvg/kdv_solver.hpp"
#include "kdvg/multilinear.hpp"

using namespace kdvg;

namespace {

SpectralField data(int n) { return gevrey_random_data(1.0, 1.0, 1, make_grid(n, kTwoPi)); }

void BM_Step(benchmark::State& st) {
  const auto u = gevrey_random_data(0.5, 0.1, 1, make_grid(static_cast<int>(st.range(0)), 64.0));
  for (auto _ : st) benchmark::DoNotOptimize(step(u, 1e-3));
}
BENCHMARK(BM_Step)->Arg(256)->Arg(1024);

void BM_Lambda3Beta3(benchmark::State& st) {
  const auto u = data(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(lambda_k(beta3_multiplier(0.2), u, 3));
}
BENCHMARK(BM_Lambda3Beta3)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Lambda4Direct(benchmark::State& st) {
  const auto u = data(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(lambda_k(beta4_multiplier(0.2), u, 4));
}
BENCHMARK(BM_Lambda4Direct)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Lambda4Fast(benchmark::State& st) {
  const auto u = data(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(lambda4_fast(u, 0.2));
}
BENCHMARK(BM_Lambda4Fast)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_Beta4Series(benchmark::State& st) {
  const double x[4] = {17.0, -33.0, 29.0, -13.0};
  for (auto _ : st) benchmark::DoNotOptimize(beta4_series(0.5, x));
}
BENCHMARK(BM_Beta4Series);

}  // namespace

BENCHMARK_MAIN();
