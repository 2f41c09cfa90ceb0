#include <benchmark/benchmark.h>

#include "torusmono/bundle.hpp"
#include "torusmono/riccati.hpp"
#include "torusmono/riemann_hilbert.hpp"
#include "torusmono/weierstrass.hpp"

using namespace torusmono;

namespace {

const cplx kTau{0.5, 1.0};

void BM_ContextConstruction(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(WeierstrassContext::make(kTau));
}
BENCHMARK(BM_ContextConstruction);

void BM_WeierstrassEvaluation(benchmark::State& state) {
  auto ctx = WeierstrassContext::make(kTau);
  cplx u{0.23, 0.17};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ctx.wp(u));
    benchmark::DoNotOptimize(ctx.wp_prime(u));
    benchmark::DoNotOptimize(ctx.zeta(u));
    benchmark::DoNotOptimize(ctx.sigma(u));
    u += cplx{1e-9, 0.0};
  }
}
BENCHMARK(BM_WeierstrassEvaluation);

void BM_MonodromyNumeric(benchmark::State& state) {
  auto ctx = WeierstrassContext::make(kTau);
  LinearFamilyPoint p{{0.3, 0.2}, {0.1, -0.2}};
  for (auto _ : state) benchmark::DoNotOptimize(monodromy_numeric(ctx, p));
}
BENCHMARK(BM_MonodromyNumeric)->Unit(benchmark::kMillisecond);

void BM_RhMap(benchmark::State& state) {
  auto ctx = WeierstrassContext::make(kTau);
  A0Point p = A0Point::main({0.3, 0.2}, {0.1, -0.2});
  for (auto _ : state) benchmark::DoNotOptimize(rh_map(ctx, p));
}
BENCHMARK(BM_RhMap);

void BM_RhInverse(benchmark::State& state) {
  auto ctx = WeierstrassContext::make(kTau);
  MonodromyPair target = rh_map(ctx, A0Point::main({0.3, 0.2}, {0.1, -0.2}));
  A0Point seed = A0Point::main({0.25, 0.25}, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(rh_inverse(ctx, target, seed));
}
BENCHMARK(BM_RhInverse)->Unit(benchmark::kMicrosecond);

void BM_GroupLaw(benchmark::State& state) {
  auto ctx = WeierstrassContext::make(kTau);
  A0Point a = A0Point::main({0.3, 0.2}, {0.1, -0.2}), b = A0Point::main({-0.1, 0.35}, {0.4, 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(group_law(ctx, a, b));
}
BENCHMARK(BM_GroupLaw);

void BM_PoincareRigidity(benchmark::State& state) {
  int g = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(poincare_rigidity(g));
}
BENCHMARK(BM_PoincareRigidity)->Arg(2)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
