#include <benchmark/benchmark.h>

#include "shockstab/residual.hpp"
#include "shockstab/stability.hpp"

namespace {

using namespace shockstab;

struct NormalShockCase {
  GridMetrics metrics;
  FlowField base;
  Discretization disc;
};

NormalShockCase make_case(int n, ReconstructionKind kind, RiemannSolver solver) {
  const GasModel gas;
  NormalShockCase c{compute_metrics(cartesian_grid(n, n)), init_normal_shock_rh(n, n, 20.0, 0.1, n / 2, gas), {}};
  c.disc.scheme.kind = kind;
  c.disc.solver = solver;
  c.disc.bc = normal_shock_boundaries(20.0, gas);
  return c;
}

void BM_Residual(benchmark::State& state) {
  const auto c = make_case(static_cast<int>(state.range(0)), ReconstructionKind::muscl, RiemannSolver::hllc);
  for (auto _ : state) benchmark::DoNotOptimize(residual(c.base, c.metrics, c.disc));
  state.SetItemsProcessed(state.iterations() * c.base.cell_count());
}
BENCHMARK(BM_Residual)->Arg(11)->Arg(50);

void BM_Assemble(benchmark::State& state) {
  const auto c = make_case(static_cast<int>(state.range(0)), ReconstructionKind::muscl, RiemannSolver::hllc);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(c.base, c.metrics, c.disc));
}
BENCHMARK(BM_Assemble)->Arg(11)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_DenseSpectrum(benchmark::State& state) {
  const auto c = make_case(static_cast<int>(state.range(0)), ReconstructionKind::muscl, RiemannSolver::hllc);
  const StabilityMatrix S = assemble(c.base, c.metrics, c.disc);
  for (auto _ : state) benchmark::DoNotOptimize(eigensolve(S));
}
BENCHMARK(BM_DenseSpectrum)->Arg(11)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MaxRealEigenpair(benchmark::State& state) {
  const auto c = make_case(11, ReconstructionKind::muscl, RiemannSolver::hllc);
  const StabilityMatrix S = assemble(c.base, c.metrics, c.disc);
  const Spectrum spectrum = eigensolve(S).values;
  for (auto _ : state) benchmark::DoNotOptimize(max_real_eigenpair(S, c.base, spectrum));
}
BENCHMARK(BM_MaxRealEigenpair)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
