#include <memory>

#include <benchmark/benchmark.h>

#include "calderon/operators.hpp"
#include "calderon/potentials.hpp"
#include "calderon/solvers.hpp"
#include "calderon/special_functions.hpp"

namespace {

using namespace calderon;

void BM_Hankel01(benchmark::State& state) {
  // Spread over all three evaluation branches.
  double x = 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(special::hankel1_01(x));
    x = x < 150.0 ? x * 1.01 : 1e-3;
  }
}
BENCHMARK(BM_Hankel01);

GridPtr ellipse(std::size_t n) {
  return std::make_shared<const GridGeometry>(sample_grids(make_benchmark_ellipse(), n));
}

void BM_AssembleAll(benchmark::State& state) {
  const GridPtr g = ellipse(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_all(g, 3.0));
}
BENCHMARK(BM_AssembleAll)->Arg(80)->Arg(160)->Arg(320)->Arg(640)->Unit(benchmark::kMillisecond);

void BM_LuSolve(benchmark::State& state) {
  const GridPtr g = ellipse(static_cast<std::size_t>(state.range(0)));
  const ComplexMatrix V = assemble_V(*g, 3.0);
  const ComplexVector b = ComplexVector::Ones(V.rows());
  for (auto _ : state) benchmark::DoNotOptimize(lu_solve(V, b));
}
BENCHMARK(BM_LuSolve)->Arg(80)->Arg(160)->Arg(320)->Arg(640)->Unit(benchmark::kMillisecond);

void BM_SolveDD01(benchmark::State& state) {
  const GridPtr g = ellipse(static_cast<std::size_t>(state.range(0)));
  const Traces t = incident_traces(IncidentField::point_source({0.1, 0.2}, 3.0), *g);
  ProblemSpec spec;
  spec.k = 3.0;
  for (auto _ : state) benchmark::DoNotOptimize(solve(g, spec, t));
}
BENCHMARK(BM_SolveDD01)->Arg(160)->Arg(640)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
