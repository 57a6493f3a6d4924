#include "thtc/equilibrium.hpp"
#include "thtc/parser.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

namespace {

thtc::Program load(const char* rel) {
  std::ifstream in(std::string(THTC_DATA_DIR) + "/" + rel);
  std::ostringstream ss;
  ss << in.rdbuf();
  return thtc::parse_program(ss.str());
}

void BM_RadarStratified(benchmark::State& state) {
  thtc::Program program = load("programs/radar.tlp");
  thtc::SolveOptions options;
  options.horizon = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(thtc::solve_stratified(program, options));
}
BENCHMARK(BM_RadarStratified)->Arg(9)->Arg(32)->Arg(128);

void BM_RadarCheckStable(benchmark::State& state) {
  thtc::Program program = load("programs/radar.tlp");
  thtc::SolveOptions options;
  options.horizon = 9;
  thtc::Trace model = thtc::solve_stratified(program, options).models.at(0);
  for (auto _ : state) benchmark::DoNotOptimize(thtc::check_stable(program, model, options));
}
BENCHMARK(BM_RadarCheckStable);

void BM_InertiaEnumerate(benchmark::State& state) {
  thtc::Program program = thtc::parse_program(
      "var x : rational in {0, 1, 2}.\nalways: x@1 := x :- not (x@1 != x).\nx := 2.");
  thtc::SolveOptions options;
  options.horizon = static_cast<std::size_t>(state.range(0));
  options.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(thtc::solve_enumerate(program, options));
}
BENCHMARK(BM_InertiaEnumerate)->Args({3, 1})->Args({5, 1})->Args({5, 4});

}  // namespace
