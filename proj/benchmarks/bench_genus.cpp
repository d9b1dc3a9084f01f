#include <benchmark/benchmark.h>

#include "mfel/genus.hpp"

using namespace mfel;

namespace {
Divisor ones(const MultiFan& f) {
  Divisor d;
  d.d.assign(f.num_rays(), Rat(1));
  return d;
}
}  // namespace

static void BM_GenusNumericP2(benchmark::State& state) {
  MultiFan f = projective_space(2);
  EdgeVectorSet v = EdgeVectorSet::primitive(f);
  Divisor xi = ones(f);
  GenusParams p;
  p.K = static_cast<int>(state.range(0));
  auto w = sample_w(2, 0);
  for (auto _ : state) {
    auto g = genus_numeric(f, v, xi, w, p);
    benchmark::DoNotOptimize(g.value);
  }
}
BENCHMARK(BM_GenusNumericP2)->Arg(20)->Arg(40);

static void BM_CharFormulaP2(benchmark::State& state) {
  MultiFan f = projective_space(2);
  EdgeVectorSet v = EdgeVectorSet::primitive(f);
  Divisor xi = ones(f);
  CoefCtx ctx = make_ctx({JobPiece{&f, &v, &xi}});
  long n = state.range(0);
  for (auto _ : state) {
    auto g = genus_char_formula_auto(f, v, xi, ctx, 4, 16, n);
    benchmark::DoNotOptimize(g.c);
  }
}
BENCHMARK(BM_CharFormulaP2)->Arg(1)->Arg(2);

static void BM_ClassJetP12(benchmark::State& state) {
  auto [fan, vprime] = weighted_projective({Int(1), Int(2)});
  Divisor xi = ones(fan);
  CoefCtx ctx = make_ctx({JobPiece{&fan, &vprime, &xi}});
  for (auto _ : state) {
    auto jet = class_restriction_jet(fan, vprime, xi, ctx, {1}, 3, 2);
    benchmark::DoNotOptimize(jet.s);
  }
}
BENCHMARK(BM_ClassJetP12);
