// Serial reference vs OpenMP kernels. Run with --benchmark_filter to pick one.

#include "distspace/analysis.hpp"
#include "distspace/constructions.hpp"
#include "distspace/degeneracy.hpp"
#include "distspace/figures.hpp"
#include "distspace/geometry.hpp"
#include "distspace/lattice.hpp"

#include <benchmark/benchmark.h>

using namespace distspace;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_EnumerateFivePoints(benchmark::State& state) {
  // Five points in the plane: 10 pair distances, 9! placements before pruning.
  const PointConfiguration c(2, std::vector<std::vector<double>>{
                                    {0, 0}, {1.1, 0.1}, {0.3, 0.9}, {1.4, 1.2}, {-0.5, 0.6}});
  const auto ms = pairwise_distances(c).multiset();
  EnumerationOptions opts;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_assemblies(ms, 2, opts).order());
}
BENCHMARK(BM_EnumerateFivePoints)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Circuits(benchmark::State& state) {
  const auto pair = symmetric_two_fold(default_symmetric_params(2));
  CircuitOptions opts;
  opts.execution = mode(state);
  opts.listing_limit = 0;
  for (auto _ : state) benchmark::DoNotOptimize(hamiltonian_circuits(pair.primary, opts).circuit_count);
}
BENCHMARK(BM_Circuits)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
  const LatticeBasis cubic(Eigen::MatrixXd::Identity(3, 3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lattice_distance_spectrum(cubic, 40.0, mode(state)).total());
  }
}
BENCHMARK(BM_Spectrum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RootGrid(benchmark::State& state) {
  const auto system = figures::three_fold_planar().system;
  RootSearchOptions opts;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(solve_constrained_all(system, opts).size());
}
BENCHMARK(BM_RootGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
