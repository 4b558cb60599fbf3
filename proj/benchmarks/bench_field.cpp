#include <cmath>

#include <benchmark/benchmark.h>

#include "logspiral/constraint.hpp"
#include "logspiral/field.hpp"
#include "logspiral/oracle.hpp"

using namespace logspiral;

namespace {

SpiralFamily family(std::size_t M) { return alexander_solve(1.0, M).family; }

void BM_ProfileW(benchmark::State& state) {
  const SpiralFamily f = family(static_cast<std::size_t>(state.range(0)));
  double theta = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(profile_w(f, PolarPoint{0.7, theta}));
    theta += 1e-3;
    if (theta > 3.0) theta = 0.1;
  }
}
BENCHMARK(BM_ProfileW)->Arg(1)->Arg(3)->Arg(8);

void BM_ConstraintReport(benchmark::State& state) {
  const SpiralFamily f = family(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(constraint_report(f));
}
BENCHMARK(BM_ConstraintReport)->Arg(1)->Arg(3)->Arg(8);

void BM_AlexanderSolve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(alexander_solve(1.0, 3));
}
BENCHMARK(BM_AlexanderSolve);

void BM_BiotSavart(benchmark::State& state) {
  const SpiralFamily f = family(3);
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(biot_savart_quadrature(f, cplx(0.4, 0.3), 1.0, tol));
}
BENCHMARK(BM_BiotSavart)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_EnergyInBall(benchmark::State& state) {
  const SpiralFamily f = family(3);
  for (auto _ : state) benchmark::DoNotOptimize(energy_in_ball(f, 1.0));
}
BENCHMARK(BM_EnergyInBall);

}  // namespace

BENCHMARK_MAIN();
