#include <benchmark/benchmark.h>

#include "exponent_lab/cfrac.hpp"
#include "exponent_lab/constants.hpp"
#include "exponent_lab/diophantine.hpp"
#include "exponent_lab/kernels.hpp"
#include "exponent_lab/lemma.hpp"

using namespace exponent_lab;

static void BM_PiMachin(benchmark::State& state) {
  const auto bits = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pi_machin(bits));
}
BENCHMARK(BM_PiMachin)->RangeMultiplier(4)->Range(256, 65536)->Unit(benchmark::kMicrosecond);

static void BM_Zeta3(benchmark::State& state) {
  const auto bits = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zeta3_central_binomial(bits));
}
BENCHMARK(BM_Zeta3)->RangeMultiplier(4)->Range(256, 65536)->Unit(benchmark::kMicrosecond);

static void BM_ExpandPiSquared(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand(PiPow{2}, n));
}
BENCHMARK(BM_ExpandPiSquared)->Arg(30)->Arg(300)->Arg(3000)->Unit(benchmark::kMillisecond);

static void BM_MuTable(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mu_table(Zeta3{}, n));
}
BENCHMARK(BM_MuTable)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_DirichletSum(benchmark::State& state) {
  const auto x = static_cast<unsigned long>(state.range(0));
  const BigReal z = BigReal::from_double(0.7).with_precision(128);
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet_sum(x, z, 128));
}
BENCHMARK(BM_DirichletSum)->RangeMultiplier(10)->Range(10, 10000)->Unit(benchmark::kMicrosecond);

static void BM_FejerSum(benchmark::State& state) {
  const auto x = static_cast<unsigned long>(state.range(0));
  const BigReal z = BigReal::from_double(0.7).with_precision(128);
  for (auto _ : state) benchmark::DoNotOptimize(fejer_sum(x, z, 128));
}
BENCHMARK(BM_FejerSum)->RangeMultiplier(10)->Range(10, 10000)->Unit(benchmark::kMicrosecond);

static void BM_SineArgmax(benchmark::State& state) {
  const auto z_max = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sine_argmax_bruteforce(2, z_max));
}
BENCHMARK(BM_SineArgmax)->Arg(1100)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_LemmaRows(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_lemma_rows(2, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_LemmaRows)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
