#include <benchmark/benchmark.h>

#include "triboson/bsolver.hpp"
#include "triboson/kernels.hpp"

using namespace triboson;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(1) ? Exec::parallel : Exec::serial; }

void BM_DeltaVector(benchmark::State& state) {
  const TorusGrid g(1, static_cast<int>(state.range(0)));
  const ThreeEnergyTable e(Momentum{0.0}, g);
  for (auto _ : state) benchmark::DoNotOptimize(channel_determinant_vector(e, -1.0, -1.0, exec_of(state)));
}

void BM_BSMatrix(benchmark::State& state) {
  const TorusGrid g(1, static_cast<int>(state.range(0)));
  const ThreeEnergyTable e(Momentum{0.0}, g);
  const auto delta = channel_determinant_vector(e, -1.0, -1.0, Exec::serial);
  for (auto _ : state) benchmark::DoNotOptimize(bs_matrix(e, delta, -1.0, -1.0, 2.0, exec_of(state)));
}

void BM_HamiltonianFull(benchmark::State& state) {
  const TorusGrid g(1, static_cast<int>(state.range(0)));
  const ThreeEnergyTable e(Momentum{0.0}, g);
  for (auto _ : state) benchmark::DoNotOptimize(hamiltonian_full(e, -1.0, exec_of(state)));
}

void BM_HamiltonianSymmetric(benchmark::State& state) {
  const TorusGrid g(2, static_cast<int>(state.range(0)));
  const ThreeEnergyTable e(Momentum{0.0, 0.0}, g);
  const OrbitBasis o = s3_orbits(e);
  for (auto _ : state) benchmark::DoNotOptimize(hamiltonian_symmetric(e, o, -1.0, exec_of(state)));
}

void BM_CountTotal(benchmark::State& state) {
  const TorusGrid g(2, static_cast<int>(state.range(0)));
  const ModelParams p{2, -2.0};
  BSOptions opts;
  opts.exec = exec_of(state);
  const BirmanSchwinger bs(Momentum{0.0, 0.0}, p, g, opts);
  for (auto _ : state) benchmark::DoNotOptimize(bs.count_total());
}

}  // namespace

// Second argument: 0 serial reference, 1 OpenMP.
BENCHMARK(BM_DeltaVector)->ArgsProduct({{64, 256}, {0, 1}});
BENCHMARK(BM_BSMatrix)->ArgsProduct({{64, 256}, {0, 1}});
BENCHMARK(BM_HamiltonianFull)->ArgsProduct({{32, 64}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HamiltonianSymmetric)->ArgsProduct({{8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountTotal)->ArgsProduct({{8, 16}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
