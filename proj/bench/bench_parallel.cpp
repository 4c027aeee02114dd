// Serial reference kernels against their OpenMP counterparts.

#include <pfilter/families.hpp>
#include <pfilter/minimize.hpp>
#include <pfilter/product.hpp>

#include <benchmark/benchmark.h>

namespace {

using pfilter::Execution;

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::Parallel : Execution::Serial;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}

void BM_OutputConsistencyPrime(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(1));
  const pfilter::Filter f = pfilter::prime_family(r);
  const pfilter::Filter m = pfilter::prime_family_minimizer(r);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfilter::check_output_consistency(f, m, mode(state)));
  }
  label(state);
}
BENCHMARK(BM_OutputConsistencyPrime)
    ->ArgsProduct({{0, 1}, {3, 4}})
    ->Unit(benchmark::kMillisecond);

void BM_MinimizeDetPrime(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(1));
  const pfilter::Filter f = pfilter::prime_family(r);
  pfilter::SearchBudget budget;
  budget.execution = mode(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfilter::minimize_det(f, budget));
  }
  label(state);
}
BENCHMARK(BM_MinimizeDetPrime)
    ->ArgsProduct({{0, 1}, {2, 3}})
    ->Unit(benchmark::kMillisecond);

void BM_MinimizeNondetDonut(benchmark::State& state) {
  const pfilter::Filter f = pfilter::donut_world();
  pfilter::SearchBudget budget;
  budget.execution = mode(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfilter::minimize_nondet(f, budget));
  }
  label(state);
}
BENCHMARK(BM_MinimizeNondetDonut)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
