#include <benchmark/benchmark.h>

#include <random>

#include "charp/cartier.hpp"
#include "charp/frobenius.hpp"
#include "charp/random.hpp"
#include "charp/valuation.hpp"

namespace {

using namespace charp;

// args: p, nvars, e
void BM_Decompose(benchmark::State& state) {
  const FieldContext& ctx = make_context(static_cast<std::uint32_t>(state.range(0)));
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto e = static_cast<std::uint64_t>(state.range(2));
  std::mt19937_64 rng(1);
  const MultiPoly f = random_poly(ctx, n, 200, 60, rng);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(f, e));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_Decompose)->Args({2, 2, 1})->Args({3, 3, 2})->Args({5, 3, 1});

void BM_CartierApply(benchmark::State& state) {
  const FieldContext& ctx = make_context(static_cast<std::uint32_t>(state.range(0)));
  const auto n = static_cast<std::size_t>(state.range(1));
  std::mt19937_64 rng(2);
  const CartierMap phi(1, random_poly(ctx, n, 20, 10, rng));
  const MultiPoly f = random_poly(ctx, n, 50, 30, rng);
  for (auto _ : state) benchmark::DoNotOptimize(apply(phi, f));
}
BENCHMARK(BM_CartierApply)->Args({2, 2})->Args({3, 3});

void BM_ComposeThenApply(benchmark::State& state) {
  const FieldContext& ctx = make_context(3);
  std::mt19937_64 rng(3);
  const CartierMap a(1, random_poly(ctx, 2, 10, 8, rng));
  const CartierMap b(1, random_poly(ctx, 2, 10, 8, rng));
  const MultiPoly f = random_poly(ctx, 2, 30, 30, rng);
  for (auto _ : state) benchmark::DoNotOptimize(apply(compose(a, b), f));
}
BENCHMARK(BM_ComposeThenApply);

// Fresh valuation per iteration so the prefix cache starts cold.
void BM_ValuateCold(benchmark::State& state) {
  const FieldContext& ctx = make_context(2);
  const MultiPoly f = parse_poly("y-x-x^2-x^6-x^24-x^120", ctx, 2);
  for (auto _ : state) {
    const EmbeddingValuation v(ctx, {streams::lacunary(ctx)});
    benchmark::DoNotOptimize(v.valuate(f));
  }
}
BENCHMARK(BM_ValuateCold);

void BM_ValuateRandom(benchmark::State& state) {
  const FieldContext& ctx = make_context(2);
  const EmbeddingValuation v(ctx, {streams::lacunary(ctx)});
  std::mt19937_64 rng(4);
  std::vector<MultiPoly> polys;
  for (int i = 0; i < 64; ++i) polys.push_back(random_nonzero_poly(ctx, 2, 6, 6, rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(v.valuate(polys[i++ % polys.size()]));
}
BENCHMARK(BM_ValuateRandom);

}  // namespace
BENCHMARK_MAIN();
