#include "thtc/kamp.hpp"
#include "thtc/parser.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_TranslateAndExport(benchmark::State& state) {
  thtc::Formula f = thtc::parse_formula("G (P (x@2 = x) -> (y < x) U (H (x + y@-1 <= 3) | wX (x != y)))");
  for (auto _ : state) benchmark::DoNotOptimize(thtc::export_fo(thtc::st_translate(f).formula));
}
BENCHMARK(BM_TranslateAndExport);

void BM_QhtSatisfies(benchmark::State& state) {
  auto n = static_cast<std::size_t>(state.range(0));
  std::vector<thtc::PartialValuation> states(n);
  for (std::size_t i = 0; i < n; ++i) states[i].set("x", thtc::Value(static_cast<std::int64_t>(i % 2)));
  thtc::HTcTrace model = thtc::HTcTrace::total(thtc::Trace(states));
  thtc::Translation tr = thtc::st_translate(thtc::parse_formula("G P (x@2 = x)"));
  thtc::QHTInterpretation q = thtc::correspond(model, tr.signature);
  thtc::FOFormula closed = thtc::substitute(tr.formula, "t", 0);
  for (auto _ : state) benchmark::DoNotOptimize(thtc::qht_satisfies(q, closed));
}
BENCHMARK(BM_QhtSatisfies)->Arg(4)->Arg(16)->Arg(64);

}  // namespace
