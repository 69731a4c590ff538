#include <benchmark/benchmark.h>

#include "inhomog/construct.hpp"
#include "inhomog/covering.hpp"
#include "inhomog/metric.hpp"

using namespace inhomog;

namespace {

const RealConstant kSqrt2 = RealConstant::surd(0, 1, 2, 1);

void BM_progression_set(benchmark::State& state) {
  const long k = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(progression_set(k, rat(1, 3), Rational(1, 4 * k)));
  }
}
BENCHMARK(BM_progression_set)->Arg(64)->Arg(512)->Arg(4096);

void BM_set_union(benchmark::State& state) {
  const long k = state.range(0);
  IntervalSetMod1 a = progression_set(k, rat(1, 3), Rational(1, 4 * k));
  IntervalSetMod1 b = progression_set(k + 1, rat(2, 7), Rational(1, 4 * (k + 1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(set_union(a, b));
  }
}
BENCHMARK(BM_set_union)->Arg(64)->Arg(512)->Arg(4096);

void BM_measure(benchmark::State& state) {
  const long k = state.range(0);
  IntervalSetMod1 a = set_union(progression_set(k, rat(1, 3), Rational(1, 4 * k)),
                                progression_set(k + 1, rat(2, 7), Rational(1, 4 * (k + 1))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.measure());
  }
}
BENCHMARK(BM_measure)->Arg(512)->Arg(4096);

void BM_dist_nearest_int(benchmark::State& state) {
  const BigInt n = 1'000'003;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dist_nearest_int(kSqrt2, n, rat(0), 80));
  }
}
BENCHMARK(BM_dist_nearest_int);

void BM_certified_leq(benchmark::State& state) {
  const BigInt n = 1'000'003;
  for (auto _ : state) {
    benchmark::DoNotOptimize(certified_leq(kSqrt2, n, rat(0), rat(1, 4)));
  }
}
BENCHMARK(BM_certified_leq);

void BM_mu_exact(benchmark::State& state) {
  RealProgressionUnion u = RealProgressionUnion::make(
      {10, 11, 13},
      {RealConstant::rational(rat(3)), RealConstant::rational(rat(5)),
       RealConstant::rational(rat(7))},
      rat(1, 2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mu_exact(u));
  }
}
BENCHMARK(BM_mu_exact);

void BM_level_scan(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_level_times({kSqrt2}, 1, rat(1, 4), rat(1, 2), 0));
  }
}
BENCHMARK(BM_level_scan);

void BM_pair_overlap(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pair_overlap(97, rat(1, 3), rat(1, 10), 101, rat(2, 7), rat(1, 10)));
  }
}
BENCHMARK(BM_pair_overlap);

}  // namespace

BENCHMARK_MAIN();
