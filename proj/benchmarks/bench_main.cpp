#include <benchmark/benchmark.h>

#include <random>

#include "backforth/corpus.hpp"
#include "backforth/density.hpp"
#include "backforth/functor.hpp"

using namespace bf;

namespace {

void BM_GreatestFamilyBareSets(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto a = corpus::bare_set(n, "A");
  auto b = corpus::bare_set(n, "B");
  for (auto _ : state) {
    benchmark::DoNotOptimize(greatest_dense_family(a, b, CategoryMode::Emb));
  }
}
BENCHMARK(BM_GreatestFamilyBareSets)->Arg(2)->Arg(3)->Arg(4)->Arg(5);

void BM_GreatestFamilyDigraphStr(benchmark::State& state) {
  std::mt19937_64 rng(4711);
  auto g = corpus::random_digraph(static_cast<int>(state.range(0)), 0.25, rng);
  auto h = corpus::random_relabel(g, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(greatest_dense_family(g, h, CategoryMode::Str));
  }
}
BENCHMARK(BM_GreatestFamilyDigraphStr)->Arg(3)->Arg(4);

void BM_IsoOracleGroups(benchmark::State& state) {
  std::mt19937_64 rng(99);
  auto q8 = corpus::quaternion8();
  auto q8b = corpus::random_relabel(q8, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(iso_oracle(q8, q8b));
  }
}
BENCHMARK(BM_IsoOracleGroups);

void BM_StarCompose(benchmark::State& state) {
  auto a = corpus::bare_set(4, "A");
  auto b = corpus::bare_set(4, "B");
  auto c = corpus::bare_set(4, "C");
  const SpanFamily ab = greatest_dense_family(a, b, CategoryMode::Emb);
  const SpanFamily bc = greatest_dense_family(b, c, CategoryMode::Emb);
  for (auto _ : state) {
    benchmark::DoNotOptimize(star_compose(ab, bc));
  }
}
BENCHMARK(BM_StarCompose);

void BM_AbelianizationTransport(benchmark::State& state) {
  auto s3 = corpus::sym3();
  const SpanFamily greatest = greatest_dense_family(s3, s3, CategoryMode::Emb);
  auto ab = make_abelianization_functor();
  for (auto _ : state) {
    benchmark::DoNotOptimize(transport_image(*ab, greatest));
  }
}
BENCHMARK(BM_AbelianizationTransport);

}  // namespace

BENCHMARK_MAIN();
