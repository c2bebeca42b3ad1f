#include <benchmark/benchmark.h>

#include <random>

#include "l0pen/l0pen.hpp"

using namespace l0pen;

namespace {

Vector normal_vector(Index n, std::uint64_t seed) {
  Rng rng(seed);
  return rng.normal_vector(n);
}

void BM_ProjectPortfolio(benchmark::State& state) {
  const Index n = state.range(0);
  const Vector a = normal_vector(n, 1);
  const Vector b = normal_vector(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(project_portfolio(a, b));
  state.SetComplexityN(n);
}
BENCHMARK(BM_ProjectPortfolio)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_ProjectAbsEpigraph(benchmark::State& state) {
  const Index n = state.range(0);
  const Vector u = normal_vector(n, 3);
  const Vector v = normal_vector(n, 4);
  for (auto _ : state) {
    Vector x = u;
    Vector s = v;
    project_abs_epigraph(x, s);
    benchmark::DoNotOptimize(s.data());
  }
}
BENCHMARK(BM_ProjectAbsEpigraph)->Arg(1000)->Arg(100000);

void BM_ProxSp(benchmark::State& state) {
  const Vector u = normal_vector(1024, 5);
  const Vector v = normal_vector(1024, 6);
  for (auto _ : state) {
    double acc = 0.0;
    for (Index i = 0; i < u.size(); ++i) acc += prox_sp(u[i], v[i], 1.5, 0.7).x;
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 1024);
}
BENCHMARK(BM_ProxSp);

void BM_SpgPortfolio200(benchmark::State& state) {
  const auto inst = gen_portfolio(200, 1);
  const auto problem = portfolio_problem(inst);
  const auto family = make_quadratic(inst.rho);
  const auto start = iterate_from_x(problem, family, portfolio_dense_start(inst));
  SpgOptions options;
  for (auto _ : state) {
    benchmark::DoNotOptimize(spg_solve(problem, family, 1.0, start, options));
  }
}
BENCHMARK(BM_SpgPortfolio200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
