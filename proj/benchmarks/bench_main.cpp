#include <benchmark/benchmark.h>

#include "bellkit/families.hpp"
#include "bellkit/local_bounds.hpp"
#include "bellkit/seesaw.hpp"
#include "bellkit/shb.hpp"

namespace {

void BM_LocalBoundAs(benchmark::State& state) {
  const bell::CorrelationInequality ineq =
      bell::gen_as(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bell::local_bound_correlation(ineq));
  }
}
BENCHMARK(BM_LocalBoundAs)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_FacetCheck(benchmark::State& state) {
  const bell::CorrelationInequality ineq =
      bell::gen_as(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bell::facet_check(ineq));
  }
}
BENCHMARK(BM_FacetCheck)->Arg(4)->Arg(6);

void BM_Seesaw(benchmark::State& state) {
  const bell::CorrelationInequality ineq =
      bell::gen_as(static_cast<int>(state.range(0)));
  bell::OptimizerConfig cfg;
  cfg.restarts = 8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bell::seesaw_value(ineq, 2, cfg));
  }
}
BENCHMARK(BM_Seesaw)->Arg(2)->Arg(6)->Arg(10);

void BM_ShbOracle(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bell::shb_local_oracle(3, m));
  }
}
BENCHMARK(BM_ShbOracle)->Arg(2)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
