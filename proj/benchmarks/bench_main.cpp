#include <benchmark/benchmark.h>

#include <cmath>

#include "eqlab/benford/mantissa.hpp"
#include "eqlab/benford/tables.hpp"
#include "eqlab/equidist/weyl.hpp"
#include "eqlab/lefn/compiled.hpp"
#include "eqlab/lefn/decide.hpp"
#include "eqlab/lefn/function.hpp"
#include "eqlab/primes/primes.hpp"

using namespace eqlab;

static void BM_SievePrimesUpTo(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(primes::primes_up_to(limit));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SievePrimesUpTo)->Arg(1 << 20)->Arg(1 << 24)->Unit(benchmark::kMillisecond);

static void BM_PrimeStream(benchmark::State& state) {
  for (auto _ : state) {
    primes::PrimeStream s;
    std::uint64_t last = 0;
    for (std::int64_t i = 0; i < state.range(0); ++i) last = s.next();
    benchmark::DoNotOptimize(last);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PrimeStream)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_CompiledEval(benchmark::State& state) {
  const lefn::CompiledFunction<long double> f(lefn::parse("x^(3/2) + log(x)^2 + log(log(x))"));
  long double acc = 0;
  std::uint64_t n = 16;
  for (auto _ : state) {
    acc += f(static_cast<long double>(n++));
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CompiledEval);

static void BM_DecideUD(benchmark::State& state) {
  const auto u = lefn::parse("log(x) + log(log(x))");
  const auto W = lefn::parse("log(x)");
  for (auto _ : state) benchmark::DoNotOptimize(lefn::decide_ud(u, W));
}
BENCHMARK(BM_DecideUD);

static void BM_WeylSums(benchmark::State& state) {
  const auto spec = equidist::SequenceSpec::of("log(x)^(1/2)");
  const auto W = weights::make_scheme("log");
  equidist::WeylOptions o;
  o.threads = static_cast<unsigned>(state.range(1));
  const auto N = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(equidist::weyl_sums(spec, W, {1, 2, 3, 4, 5}, {N}, o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WeylSums)->Args({1'000'000, 1})->Args({1'000'000, 4})->Unit(benchmark::kMillisecond);

static void BM_StarDiscrepancy(benchmark::State& state) {
  const auto spec = equidist::SequenceSpec::of("irr(1.4142135623730950488,sqrt2)*x");
  const auto W = weights::make_scheme("natural");
  const auto N = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(equidist::discrepancy(spec, W, N));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StarDiscrepancy)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_MantissaAccumulator(benchmark::State& state) {
  benford::MantissaAccumulator acc;
  std::uint64_t k = 1;
  for (auto _ : state) {
    acc.add(std::log10(static_cast<double>(k++)));
    benchmark::DoNotOptimize(acc.fractional());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_MantissaAccumulator);

static void BM_FactorialMantissas(benchmark::State& state) {
  const auto N = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(benford::mantissa_fractions(benford::BenfordSequence::factorial(), N));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FactorialMantissas)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
