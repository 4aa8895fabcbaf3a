#include <benchmark/benchmark.h>

#include "ddsense/control.hpp"
#include "ddsense/evalfn.hpp"
#include "ddsense/nmr.hpp"
#include "ddsense/qcore.hpp"

namespace {

using namespace ddsense;

void BM_Expm2x2(benchmark::State& state) {
  cmat2 h;
  h << 0.3, std::complex<double>(0.5, -0.2), std::complex<double>(0.5, 0.2),
      -0.3;
  for (auto _ : state) {
    cmat2 u = expm_2x2(h, 1.0);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_Expm2x2);

void BM_SequencePropagator(benchmark::State& state) {
  PulseSequence seq = composite_pi();
  ErrorPoint err{0.4, 0.03};
  for (auto _ : state) {
    cmat2 u = sequence_propagator(seq, err);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_SequencePropagator);

void BM_Fqs(benchmark::State& state) {
  Chi chi = unitary_to_chi(sequence_propagator(composite_pi(), {0.4, 0.03}));
  for (auto _ : state) {
    double f = f_qs(chi);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_Fqs);

void BM_RobustnessProfile(benchmark::State& state) {
  PulseSequence seq = composite_pi();
  ErrorGrid grid = uniform_grid(1.0, 21, 0.1, 5);
  for (auto _ : state) {
    SweepResult profile = robustness_profile(seq, grid, nullptr, nullptr, 1);
    benchmark::DoNotOptimize(profile);
  }
}
BENCHMARK(BM_RobustnessProfile);

NmrConfig one_spin_config(int n_pulses) {
  NmrConfig cfg;
  cfg.bath.n_spins = 1;
  cfg.bath.larmor_0 = {Eigen::Vector3d(0.0, 0.0, 2.5570797e6)};
  cfg.bath.larmor_1 = {Eigen::Vector3d(1.8849556e5, 0.0, 2.651469e6)};
  cfg.dd.n_pulses = n_pulses;
  cfg.dd.tau = 606e-9;
  cfg.dd.pulse = rect_pi();
  return cfg;
}

void BM_CpmgSignal(benchmark::State& state) {
  NmrConfig cfg = one_spin_config(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double s = cpmg_signal(cfg);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_CpmgSignal)->Arg(16)->Arg(64);

void BM_ExpmDenseJoint(benchmark::State& state) {
  NmrConfig cfg = one_spin_config(16);
  cmat h = build_joint_hamiltonian(cfg.bath, 0.0);
  for (auto _ : state) {
    cmat u = expm_dense(h, 1e-7);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_ExpmDenseJoint);

}  // namespace

BENCHMARK_MAIN();
