#include "thtc/parser.hpp"
#include "thtc/semantics.hpp"

#include <benchmark/benchmark.h>

namespace {

thtc::HTcTrace counter(std::size_t length) {
  std::vector<thtc::PartialValuation> states(length);
  for (std::size_t i = 0; i < length; ++i) states[i].set("x", thtc::Value(static_cast<std::int64_t>(i)));
  return thtc::HTcTrace::total(thtc::Trace(states));
}

void BM_SatisfiesAlwaysIncreasing(benchmark::State& state) {
  thtc::HTcTrace model = counter(static_cast<std::size_t>(state.range(0)));
  thtc::Formula f = thtc::parse_formula("G (X true -> next(x) > x)");
  for (auto _ : state) benchmark::DoNotOptimize(thtc::satisfies(model, 0, f));
}
BENCHMARK(BM_SatisfiesAlwaysIncreasing)->Arg(16)->Arg(256)->Arg(4096);

void BM_SatisfiesNestedUntil(benchmark::State& state) {
  thtc::HTcTrace model = counter(static_cast<std::size_t>(state.range(0)));
  thtc::Formula f = thtc::parse_formula("G ((x >= 0) U (P (x = 3) & F (x@-1 + x@1 <= 100)))");
  for (auto _ : state) benchmark::DoNotOptimize(thtc::satisfies_all(model, f));
}
BENCHMARK(BM_SatisfiesNestedUntil)->Arg(16)->Arg(256);

void BM_IsEquilibrium(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  thtc::Formula f = thtc::parse_formula("x := 0 & G (X true -> next(x) := x + 1)");
  thtc::Trace t = counter(n).there();
  for (auto _ : state) benchmark::DoNotOptimize(thtc::is_equilibrium(t, f));
}
BENCHMARK(BM_IsEquilibrium)->Arg(4)->Arg(8)->Arg(12);

}  // namespace
