#include <benchmark/benchmark.h>

#include "mfel/sr_ring.hpp"

using namespace mfel;

static void BM_PushforwardPoint(benchmark::State& state) {
  MultiFan f = projective_space(3);
  EdgeVectorSet v = EdgeVectorSet::primitive(f);
  SRClass x(f.num_rays());
  x.add_term({1, 1, 1, 0}, Rat(1));
  x.add_term({2, 1, 0, 0}, Rat(1, 3));
  for (auto _ : state) {
    auto r = pushforward_point(f, v, x);
    benchmark::DoNotOptimize(r.num);
  }
}
BENCHMARK(BM_PushforwardPoint);

static void BM_FromTuple(benchmark::State& state) {
  MultiFan f = projective_space(2);
  EdgeVectorSet v = EdgeVectorSet::primitive(f);
  SRClass x(f.num_rays());
  x.add_term({2, 1, 0}, Rat(2));
  x.add_term({0, 1, 1}, Rat(-1, 2));
  auto t = tuple_of(f, v, x);
  for (auto _ : state) {
    auto y = from_tuple(f, v, t);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_FromTuple);
