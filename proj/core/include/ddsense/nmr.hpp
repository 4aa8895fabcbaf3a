#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ddsense/control.hpp"
#include "ddsense/fit.hpp"
#include "ddsense/qcore.hpp"
#include "ddsense/sweep.hpp"

namespace ddsense {

// Small nuclear bath felt by the sensor electron. Each nucleus n precesses
// about a conditional Larmor vector that depends on the electron state:
// larmor_1[n] = larmor_0[n] + hyperfine vector. Optional Ising-form
// nucleus-nucleus couplings c[n][m] (symmetric, component-wise
// c_x IxIx + c_y IyIy + c_z IzIz); empty means uncoupled.
struct BathSpec {
  int n_spins = 1;
  std::vector<Eigen::Vector3d> larmor_0;  // rad/s, electron in |0>
  std::vector<Eigen::Vector3d> larmor_1;  // rad/s, electron in |1>
  std::vector<std::vector<Eigen::Vector3d>> couplings;  // rad/s
  double inverse_temperature = 0.0;  // 1/(rad/s); 0 = maximally mixed
};

struct NmrConfig {
  BathSpec bath;
  DDSequence dd;
  ErrorPoint err;
  double electron_detuning = 0.0;  // rad/s, acts during free evolution
};

void validate(const BathSpec& bath);
void validate(const NmrConfig& cfg);

// Conditional bath Hamiltonian H^(ms) = sum_n larmor_ms[n] . I_n
// + sum_{n>m} couplings, with I = sigma/2 per nucleus.
cmat bath_hamiltonian(const BathSpec& bath, int ms);

// Bath density matrix exp(-beta H^(0)) / Z; identity/2^n at beta = 0.
cmat bath_thermal_state(const BathSpec& bath);

// H = detuning |1><1| (x) I + |0><0| (x) H^(0) + |1><1| (x) H^(1).
cmat build_joint_hamiltonian(const BathSpec& bath, double electron_detuning);

// Rescaled sensor coherence after the full train: prepares the electron
// x-projector against the thermal bath, evolves with dd_propagator over the
// joint Hamiltonian, and returns s = 2 Tr[(Px (x) I) U rho U^dag] - 1,
// so the no-dip baseline is 1 and full collapse is -1.
double cpmg_signal(const NmrConfig& cfg);

struct TauScanResult {
  SweepResult table;               // columns tau_s, signal
  std::vector<GaussianDip> dips;   // sorted by center; check .converged
};

// s(tau) over [tau_min, tau_max] plus Gaussian fits of every dip found
// (windowed local minima below the noise floor). A fit that fails to
// converge is returned with its flag cleared; the raw scan is always kept.
TauScanResult scan_tau(const NmrConfig& cfg, double tau_min, double tau_max,
                       int n_points, int threads = 1);

struct NScanResult {
  SweepResult table;  // columns N, dip_depth, fit_a, fit_lambda, fit_b
  ExpN2Fit fit;
};

// Dip depth vs pulse number at fixed tau, with the a exp(-lambda N^2) + b
// fit. Depth is measured against the same train run on a decoupled copy of
// the bath (larmor_1 := larmor_0), so pulse-error losses cancel. Throws
// FitDidNotConverge unless must_converge is cleared, in which case the
// result carries the best fit found with its flag down.
NScanResult scan_n(const NmrConfig& cfg, const std::vector<int>& n_values,
                   int threads = 1, bool must_converge = true);

// Per detuning ratio: simulated s_Delta, the prediction f_qs^N * s_0, their
// difference, and the realized pi-pulse f_qs.
// Columns: delta_ratio, s_delta, predicted, difference, f_qs.
SweepResult fqs_scaling_check(const NmrConfig& cfg,
                              const std::vector<double>& delta_ratios,
                              int threads = 1);

}  // namespace ddsense
