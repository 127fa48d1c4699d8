#include <benchmark/benchmark.h>

#include "hsol/soliton.hpp"

using namespace hsol;

namespace {

SolitonProblem killing_problem(int n) {
  SolitonProblem p;
  p.kind = SolitonKind::ricci;
  p.n = n;
  p.field = n == 2 ? build_killing_2d(1, 2, 3) : build_killing_nd(n, std::vector<double>(static_cast<std::size_t>(n - 1), 0.5), -1, std::vector<double>(static_cast<std::size_t>(n - 1), 1.0));
  p.lambda = -1;
  return p;
}

SolitonProblem gradient_problem(int n) {
  PotentialParams f;
  f.n = n;
  f.a = 1;
  f.b.assign(static_cast<std::size_t>(n - 1), 0.5);
  f.c = 2;
  SolitonProblem p;
  p.kind = SolitonKind::gradient_grb;
  p.n = n;
  p.potential = f;
  p.lambda = 0.7;
  p.rho = 0.1;
  p.G = derived_conformal_factor(f, p.lambda, p.rho);
  return p;
}

SolitonProblem custom_problem(int n) {
  std::vector<std::string> comps;
  for (int k = 1; k <= n; ++k) comps.push_back("sin(x" + std::to_string(k) + ")*exp(x" + std::to_string(n) + ") / (1 + x1^2)");
  SolitonProblem p;
  p.kind = SolitonKind::ricci;
  p.n = n;
  p.field = build_custom_field(n, comps);
  p.lambda = -1;
  return p;
}

SolitonProblem make(int which, int n) {
  switch (which) {
    case 0: return killing_problem(n);
    case 1: return gradient_problem(n);
    default: return custom_problem(n);
  }
}

// Arguments: problem (0 killing, 1 gradient, 2 custom), dimension, nodes per axis.
void BM_Serial(benchmark::State& state) {
  const auto prob = make(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto grid = GridSpec::standard(prob.n, static_cast<int>(state.range(2)));
  for (auto _ : state) benchmark::DoNotOptimize(grid_residual_report_serial(prob, grid, 1e-9));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.node_count()));
}

void BM_Parallel(benchmark::State& state) {
  const auto prob = make(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  const auto grid = GridSpec::standard(prob.n, static_cast<int>(state.range(2)));
  GridOptions opts;
  opts.threads = static_cast<int>(state.range(3));
  for (auto _ : state) benchmark::DoNotOptimize(grid_residual_report(prob, grid, 1e-9, opts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.node_count()));
}

void serial_args(benchmark::internal::Benchmark* b) {
  for (int which = 0; which < 3; ++which) {
    b->Args({which, 2, 100});
    b->Args({which, 3, 20});
  }
}

void parallel_args(benchmark::internal::Benchmark* b) {
  for (int which = 0; which < 3; ++which) {
    for (int threads : {1, 2, 4, 8}) {
      b->Args({which, 2, 100, threads});
      b->Args({which, 3, 20, threads});
    }
  }
}

}  // namespace

BENCHMARK(BM_Serial)->Apply(serial_args)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Parallel)->Apply(parallel_args)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
