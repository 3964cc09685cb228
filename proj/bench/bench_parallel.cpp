// Serial vs OpenMP kernels on the same inputs.
#include <benchmark/benchmark.h>

#include "corpus.hpp"
#include "mpst/parallel/batch.hpp"
#include "random_gen.hpp"

using namespace mpst;

namespace {

const std::vector<GlobalType>& batch() {
  static const auto gs = testing::random_projectable_batch(2024, 64);
  return gs;
}

void BM_EquivSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(parallel::equiv_batch_serial(batch(), st.range(0)));
}
void BM_EquivParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(parallel::equiv_batch(batch(), st.range(0)));
}

void BM_TheoremSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(parallel::theorem_batch_serial(batch(), st.range(0)));
}
void BM_TheoremParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(parallel::theorem_batch(batch(), st.range(0)));
}

void BM_TracesSerial(benchmark::State& st) {
  auto c = initial_config(testing::corpus_global("two_buyer.gt"));
  for (auto _ : st) benchmark::DoNotOptimize(traces_global(c, st.range(0)));
}
void BM_TracesParallel(benchmark::State& st) {
  auto c = initial_config(testing::corpus_global("two_buyer.gt"));
  for (auto _ : st) benchmark::DoNotOptimize(parallel::traces_global_parallel(c, st.range(0)));
}

}  // namespace

BENCHMARK(BM_EquivSerial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EquivParallel)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TheoremSerial)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TheoremParallel)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TracesSerial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TracesParallel)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
