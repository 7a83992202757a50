#include <benchmark/benchmark.h>

#include "tritherm/convergents.hpp"
#include "tritherm/partition.hpp"
#include "tritherm/trimap.hpp"

using namespace tritherm;

namespace {

void BM_partition_exact(benchmark::State& state) {
  PairRepr pair = PairRepr::from_rational(Rat(3, 7), Rat(2, 9));
  long n = state.range(0);
  for (auto _ : state) {
    PartitionResult r = z_value(pair, n, Rat(3), 256);
    benchmark::DoNotOptimize(r.value.raw());
  }
  state.SetItemsProcessed(state.iterations() * (1l << n));
}
BENCHMARK(BM_partition_exact)->Arg(8)->Arg(12)->Arg(16);

void BM_partition_enclosure(benchmark::State& state) {
  PairRepr pair = cubic_fixed_point(256);
  long n = state.range(0);
  for (auto _ : state) {
    PartitionResult r = z_value(pair, n, Rat(3), 256);
    benchmark::DoNotOptimize(r.value.raw());
  }
  state.SetItemsProcessed(state.iterations() * (1l << n));
}
BENCHMARK(BM_partition_enclosure)->Arg(8)->Arg(12)->Arg(16);

void BM_digit_extraction(benchmark::State& state) {
  PairRepr pair = cubic_fixed_point(512);
  for (auto _ : state) {
    DigitSequence ds = triangle_sequence(pair, state.range(0));
    benchmark::DoNotOptimize(ds.digits.data());
  }
}
BENCHMARK(BM_digit_extraction)->Arg(10)->Arg(30);

void BM_convergent_table(benchmark::State& state) {
  PairRepr pair = PairRepr::from_rational(Rat(355, 613), Rat(113, 613));
  DigitSequence ds = triangle_sequence(pair, state.range(0));
  for (auto _ : state) {
    ConvergentTable t = make_table(pair, ds);
    benchmark::DoNotOptimize(t.X.data());
  }
}
BENCHMARK(BM_convergent_table)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
