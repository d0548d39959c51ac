#include <random>

#include <benchmark/benchmark.h>

#include "braidkh/bracket.hpp"
#include "braidkh/homology.hpp"
#include "braidkh/snf.hpp"

using namespace braidkh;

namespace {

// Closure of (s1 s2^-1 s3)^(n/3) on four strands.
Diagram mixed_braid(int n) {
  BraidWord w{4, {}};
  for (int i = 0; i < n; ++i) w.letters.push_back(i % 3 == 1 ? -2 : i % 3 + 1);
  return braid_closure(w);
}

void BM_BracketTrefoil(benchmark::State& state) {
  const Diagram d = parse_braid_word("B2 1 1 1");
  for (auto _ : state) benchmark::DoNotOptimize(bracket_br(d));
}
BENCHMARK(BM_BracketTrefoil);

void BM_Bracket(benchmark::State& state) {
  const Diagram d = mixed_braid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bracket_br(d));
}
BENCHMARK(BM_Bracket)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);

void BM_HomologyTrefoil(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(homology_groups(parse_braid_word("B2 1 1 1")));
}
BENCHMARK(BM_HomologyTrefoil)->Unit(benchmark::kMillisecond);

void BM_Homology(benchmark::State& state) {
  const Diagram d = mixed_braid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(homology_groups(d));
}
BENCHMARK(BM_Homology)->DenseRange(6, 9, 3)->Unit(benchmark::kMillisecond);

void BM_SmithNormalForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  SparseMatrix m;
  m.rows = m.cols = n;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (rng() % 4 == 0) m.entries.push_back({r, c, static_cast<long long>(rng() % 7) - 3});
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
