// Serial reference vs OpenMP kernel for the three hot loops.

#include <benchmark/benchmark.h>

#include "absorbtk/absorb.hpp"
#include "absorbtk/catalog.hpp"
#include "absorbtk/halfline.hpp"

using namespace absorbtk;

namespace {

const ComplexMatrix& clockshift_gram() {
  static const ComplexMatrix g = gram(rescale(builtin_instance(InstanceSpec::parse("clockshift(8)")).pres)).matrix;
  return g;
}

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::Parallel : Execution::Serial;
}

void BM_ResolventChain(benchmark::State& state) {
  const ComplexMatrix& g = clockshift_gram();
  for (auto _ : state) benchmark::DoNotOptimize(resolvent_chain(g, 128, mode(state)));
}

void BM_DecaySweep(benchmark::State& state) {
  const AbsorptionSystem sys =
      build_isometry(rescale(builtin_instance(InstanceSpec::parse("pauli")).pres), 1);
  const auto ns = decay_ladder(16, 512, 8);
  for (auto _ : state) benchmark::DoNotOptimize(decay_profile(sys, ns, mode(state)));
}

void BM_HalflineLift(benchmark::State& state) {
  const halfline::Grid grid = halfline::make_grid(20.0, 4095);
  const halfline::Profile prof = halfline::weight_profile(grid);
  ComplexVector g(grid.M);
  for (Index j = 0; j < grid.M; ++j) g(j) = halfline::bump(grid.t(j + 1));
  for (auto _ : state) benchmark::DoNotOptimize(halfline::halfline_lift_apply(grid, prof, 4096, g, mode(state)));
}

}  // namespace

BENCHMARK(BM_ResolventChain)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecaySweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HalflineLift)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
