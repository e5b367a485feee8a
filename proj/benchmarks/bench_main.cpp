#include <benchmark/benchmark.h>

#include "polar_ekr/count.hpp"
#include "polar_ekr/ekr.hpp"
#include "polar_ekr/graph.hpp"
#include "polar_ekr/modular.hpp"
#include "polar_ekr/search.hpp"

using namespace polar;

namespace {

const Geometry& w52() {
  static const Geometry g = Geometry::build(PolarKind::symplectic, 3, 2);
  return g;
}

void BM_BuildGeometry(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Geometry::build(PolarKind::symplectic, 3, q));
}
BENCHMARK(BM_BuildGeometry)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ChamberGraph(benchmark::State& state) {
  const auto threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(OppositionGraph::build(w52(), FlagType::chambers(3), threads));
}
BENCHMARK(BM_ChamberGraph)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_EchelonModP(benchmark::State& state) {
  const auto gr = OppositionGraph::build(w52(), FlagType::single(static_cast<int>(state.range(0)), 3));
  const int n = static_cast<int>(gr.vertex_count());
  std::vector<std::int64_t> a(static_cast<std::size_t>(n) * n, 0);
  for (int v = 0; v < n; ++v) {
    a[static_cast<std::size_t>(v) * n + v] = 8;
    for (auto u : gr.neighbors(v)) a[static_cast<std::size_t>(v) * n + u] = 1;
  }
  const auto prime = modp::elimination_primes(1).front();
  for (auto _ : state) benchmark::DoNotOptimize(modp::echelon_mod_p(a, n, n, prime));
  state.SetLabel(std::to_string(n) + " x " + std::to_string(n));
}
BENCHMARK(BM_EchelonModP)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CertifiedSpectrum(benchmark::State& state) {
  const auto gr = OppositionGraph::build(w52(), FlagType::single(static_cast<int>(state.range(0)), 3));
  for (auto _ : state) benchmark::DoNotOptimize(certified_spectrum(gr));
}
BENCHMARK(BM_CertifiedSpectrum)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_LineGraphSearch(benchmark::State& state) {
  const auto gr = OppositionGraph::build(w52(), FlagType::single(2, 3));
  SearchOptions opt;
  opt.root_bound = 35;
  for (auto _ : state) benchmark::DoNotOptimize(max_independent_set(gr, opt));
}
BENCHMARK(BM_LineGraphSearch)->Unit(benchmark::kMillisecond);

void BM_ClosedForms(benchmark::State& state) {
  const Params p{static_cast<int>(state.range(0)), 2, 7};
  for (auto _ : state) {
    for (int s = 1; s <= p.n; ++s) {
      benchmark::DoNotOptimize(lambda_subspace(s, p));
      benchmark::DoNotOptimize(h_ns(s, p));
    }
    benchmark::DoNotOptimize(flag_count(FlagType::chambers(p.n), p));
  }
}
BENCHMARK(BM_ClosedForms)->Arg(4)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
