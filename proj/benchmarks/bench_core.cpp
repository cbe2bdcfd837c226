// Micro-benchmarks for the hot paths: the divergence kernel that dominates
// attack sweeps, one full sweep step, the witness trajectory, and the
// measured-rate evaluation on the worked example.

#include <benchmark/benchmark.h>

#include "privwit/channels.hpp"
#include "privwit/keyrates.hpp"
#include "privwit/linalg.hpp"
#include "privwit/nonmarkov.hpp"
#include "privwit/qinfo.hpp"
#include "privwit/random.hpp"
#include "privwit/states.hpp"

namespace {

using namespace privwit;

void bm_relative_entropy(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(11);
  SubsystemDims dims({{"s", d}});
  DensityMatrix rho = rng.density(dims);
  DensityMatrix sigma = rng.density(dims);
  for (auto _ : state) benchmark::DoNotOptimize(relative_entropy(rho, sigma));
}
BENCHMARK(bm_relative_entropy)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void bm_attack_bound_step(benchmark::State& state) {
  const int ds = static_cast<int>(state.range(0));
  DensityMatrix gamma = gamma_swap(ds);
  KrausChannel ch = standard_channel(ChannelKind::AmplitudeDamping, 0.3);
  std::vector<double> p_grid = uniform_grid(0.0, 1.0, 201);
  for (auto _ : state) benchmark::DoNotOptimize(er_upper_bound_attack(gamma, ch, p_grid));
}
BENCHMARK(bm_attack_bound_step)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void bm_witness_trajectory(benchmark::State& state) {
  Operator x = canonical_witness();
  DynamicsFamily dyn =
      standard_dynamics(DynamicsKind::OscillatingDephasing, {0.5, 3.0}, 0.0, 3.0);
  std::vector<double> grid = uniform_grid(0.0, 3.0, 301);
  for (auto _ : state) benchmark::DoNotOptimize(trace_norm_trajectory(dyn, x, grid));
}
BENCHMARK(bm_witness_trajectory)->Unit(benchmark::kMillisecond);

void bm_dw_rate_superdense(benchmark::State& state) {
  PureState psi = superdense_example();
  Povm povm = Povm::computational(psi.dims().subset({"A"}));
  for (auto _ : state)
    benchmark::DoNotOptimize(dw_rate(psi, {"A"}, {"E"}, povm));
}
BENCHMARK(bm_dw_rate_superdense)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
