#include <benchmark/benchmark.h>

#include <random>

#include "kridge/kernel.hpp"
#include "kridge/nuclear.hpp"
#include "kridge/reduced_rank.hpp"
#include "kridge/ridge.hpp"
#include "kridge/simulate.hpp"

using namespace kridge;

namespace {

Matrix random_inputs(int n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Matrix x(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = unif(rng);
  return x;
}

Matrix random_responses(int n, int p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix y(n, p);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < p; ++k) y(i, k) = gauss(rng);
  return y;
}

}  // namespace

static void BM_KernelMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const KernelSpec spec(4.0, 1);
  const Matrix x = random_inputs(n, 1, 7);
  for (auto _ : state) {
    KernelMatrix k = kernel_matrix(spec, x);
    benchmark::DoNotOptimize(k.values.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_KernelMatrix)->RangeMultiplier(2)->Range(25, 200)->Complexity();

static void BM_RidgeSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const KernelSpec spec(1.0, 1);
  const KernelMatrix k = kernel_matrix(spec, random_inputs(n, 1, 11));
  const Matrix y = random_responses(n, 10, 13);
  for (auto _ : state) {
    Matrix u = ridge_solve(k, y, 0.01);
    benchmark::DoNotOptimize(u.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_RidgeSolve)->RangeMultiplier(2)->Range(25, 200)->Complexity();

static void BM_HardRankFit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const KernelSpec spec(1.0, 1);
  const Dataset data(random_inputs(n, 1, 17), random_responses(n, 10, 19));
  const KernelMatrix k = kernel_matrix(spec, data.X);
  for (auto _ : state) {
    FittedModel m = fit_hard_rank(k, data, spec, 0.01, 3);
    benchmark::DoNotOptimize(m.coeff.data());
  }
}
BENCHMARK(BM_HardRankFit)->Arg(20)->Arg(60)->Arg(120);

static void BM_Svt(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const Matrix b = random_responses(p, 4 * p, 23);
  for (auto _ : state) {
    Matrix z = svt(b, 0.3);
    benchmark::DoNotOptimize(z.data());
  }
}
BENCHMARK(BM_Svt)->Arg(5)->Arg(10)->Arg(20);

static void BM_RelaxedFit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const KernelSpec spec(1.0, 1);
  const Dataset data(random_inputs(n, 1, 29), random_responses(n, 6, 31));
  const KernelMatrix k = kernel_matrix(spec, data.X);
  SolverOptions opts;
  opts.tol = 1e-7;
  for (auto _ : state) {
    RelaxedFit fit = fit_relaxed(k, data, spec, 0.01, 0.05, opts);
    benchmark::DoNotOptimize(fit.report.final_objective);
  }
}
BENCHMARK(BM_RelaxedFit)->Arg(15)->Arg(30)->Arg(60);

static void BM_HaltonPoints(benchmark::State& state) {
  for (auto _ : state) {
    Matrix pts = halton_points(200, 2);
    benchmark::DoNotOptimize(pts.data());
  }
}
BENCHMARK(BM_HaltonPoints);

BENCHMARK_MAIN();
