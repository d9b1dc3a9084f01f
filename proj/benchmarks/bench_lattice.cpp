#include <benchmark/benchmark.h>

#include "mfel/lattice.hpp"

using namespace mfel;

static void BM_SmithNormalForm(benchmark::State& state) {
  long n = state.range(0);
  IntMat m(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) m(i, j) = (i * 7919 + j * 104729) % 23 - 11;
  for (auto _ : state) {
    auto s = smith_normal_form(m);
    benchmark::DoNotOptimize(s.D);
  }
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16);

static void BM_QuotientGroup(benchmark::State& state) {
  std::vector<IntVec> vecs = {{Int(3), Int(1), Int(0)}, {Int(0), Int(4), Int(1)},
                              {Int(1), Int(0), Int(5)}};
  for (auto _ : state) {
    auto g = saturate_and_quotient({0, 1, 2}, vecs);
    benchmark::DoNotOptimize(g.order());
  }
}
BENCHMARK(BM_QuotientGroup);

BENCHMARK_MAIN();
