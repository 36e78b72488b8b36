#include <benchmark/benchmark.h>

#include "multiquad/arith.hpp"
#include "multiquad/countform.hpp"
#include "multiquad/globalcount.hpp"

using namespace multiquad;

static void BM_SieveSegment(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    FactorSieve s(50'000'000, 50'000'000 + n);
    benchmark::DoNotOptimize(s.spf_table().data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_SieveSegment)->Arg(1 << 16)->Arg(1 << 20)->Arg(1 << 22)->Unit(benchmark::kMillisecond);

static void BM_SumA(benchmark::State& state) {
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sum_A(15, x));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_SumA)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_SumABivariate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sum_A_bivariate(3, -1, 10'000'000));
}
BENCHMARK(BM_SumABivariate)->Unit(benchmark::kMillisecond);

static void BM_CountN(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const bool tr = state.range(1) != 0;
  mpz_class x;
  mpz_ui_pow_ui(x.get_mpz_t(), 10, static_cast<unsigned long>(state.range(2)));
  cached_family(k, tr ? FamilyKind::R11 : FamilyKind::Q11);
  for (auto _ : state) benchmark::DoNotOptimize(count_N(k, x, tr));
}
BENCHMARK(BM_CountN)
    ->Args({2, 0, 12})
    ->Args({2, 1, 12})
    ->Args({2, 0, 14})
    ->Args({3, 0, 24})
    ->Unit(benchmark::kMillisecond);

static void BM_DeriveFamily(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(derive_family(k, FamilyKind::R21));
}
BENCHMARK(BM_DeriveFamily)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
