#include <benchmark/benchmark.h>

#include "varbound/bounds.hpp"
#include "varbound/exactcheck.hpp"
#include "varbound/expr.hpp"
#include "varbound/orthopoly.hpp"
#include "varbound/pearson.hpp"

namespace {

using namespace varbound;

void BM_GaussRule(benchmark::State& state) {
  const auto dist = make_beta(2.0, 3.0);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_rule(dist, k));
}
BENCHMARK(BM_GaussRule)->Arg(16)->Arg(64)->Arg(160)->Arg(256);

void BM_BoundSmn(benchmark::State& state) {
  const auto dist = make_gamma(2.0, 1.0);
  const auto g = parse("sin(x)");
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bound_smn(dist, g, m, 2));
}
BENCHMARK(BM_BoundSmn)->Arg(0)->Arg(4)->Arg(10);

void BM_Sweep(benchmark::State& state) {
  const auto dist = make_normal(0.0, 1.0);
  const auto g = parse("exp(x)");
  for (auto _ : state) benchmark::DoNotOptimize(sweep(dist, g, 1, 8));
}
BENCHMARK(BM_Sweep);

void BM_VerifySuite(benchmark::State& state) {
  const std::vector<Rational> deltas{Rational(0), Rational(-1, 7), Rational(-1, 2), Rational(-1)};
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_suite(order, deltas, 20));
}
BENCHMARK(BM_VerifySuite)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
