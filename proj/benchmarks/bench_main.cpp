#include <benchmark/benchmark.h>

#include <random>

#include "ramanujan/complex.hpp"
#include "ramanujan/quotient.hpp"
#include "ramanujan/spectra.hpp"

using namespace ramanujan;

namespace {

struct Setup {
  Construction c;
  std::vector<std::vector<ProjMatrix>> S;
};

Setup prepare(std::uint64_t q, unsigned d, unsigned e) {
  AlgebraOptions o;
  o.q = q;
  o.d = d;
  Setup s{construct(o, e, 1), {}};
  s.S = reduce_headers(header_sets(s.c.algebra, relations_P(s.c.algebra)), *s.c.quotient.ring);
  return s;
}

void BM_FieldMul(benchmark::State& state) {
  auto f = Field::extension(Field::prime(static_cast<std::uint64_t>(state.range(0))), static_cast<unsigned>(state.range(1)));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<Elem> pick(1, f->order() - 1);
  std::vector<Elem> xs(1024);
  for (auto& x : xs) x = pick(rng);
  Elem acc = 1;
  for (auto _ : state) {
    for (Elem x : xs) acc = f->mul(acc, x);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_FieldMul)->Args({2, 8})->Args({3, 4})->Args({7, 3});

void BM_Construct(benchmark::State& state) {
  AlgebraOptions o;
  o.q = static_cast<std::uint64_t>(state.range(0));
  o.d = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    CyclicAlgebra alg(o);
    benchmark::DoNotOptimize(header_sets(alg, relations_P(alg)));
  }
}
BENCHMARK(BM_Construct)->Args({2, 3})->Args({3, 3})->Args({7, 3})->Unit(benchmark::kMillisecond);

void BM_Closure(benchmark::State& state) {
  Setup s = state.range(0) == 0 ? prepare(3, 3, 1) : prepare(2, 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(closure(*s.c.quotient.ring, s.S));
}
BENCHMARK(BM_Closure)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Triangles(benchmark::State& state) {
  Setup s = prepare(2, 3, 2);
  GroupClosure g = closure(*s.c.quotient.ring, s.S);
  for (auto _ : state) benchmark::DoNotOptimize(build_complex(g, 3, 2));
}
BENCHMARK(BM_Triangles)->Unit(benchmark::kMillisecond);

void BM_SparseRadius(benchmark::State& state) {
  Setup s = prepare(2, 3, 2);
  GroupClosure g = closure(*s.c.quotient.ring, s.S);
  auto ops = assemble_hecke(g, 3);
  SpectrumOptions o;
  o.colors = assign_colors(g, s.c.quotient.r);
  o.r = s.c.quotient.r;
  for (auto _ : state) benchmark::DoNotOptimize(simultaneous_spectrum(ops, SpectrumMode::Sparse, o));
}
BENCHMARK(BM_SparseRadius)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
