#pragma once

#include <functional>
#include <vector>

#include "ddsense/control.hpp"
#include "ddsense/qcore.hpp"
#include "ddsense/sweep.hpp"

namespace ddsense {

// Weighted set of error points; weights sum to 1.
struct ErrorGrid {
  std::vector<ErrorPoint> points;
  std::vector<double> weights;
};

void validate(const ErrorGrid& grid);

// Uniform rectangular grid over |Delta/Omega| <= delta_max, |eps| <= eps_max.
ErrorGrid uniform_grid(double delta_max, int n_delta, double eps_max,
                       int n_eps);

// Gaussian detuning distribution (eps = 0), n_points over +-3 sigma.
ErrorGrid gaussian_detuning_grid(double sigma, int n_points);

// Operation quality chi_xx + chi_yy: the probability that the channel flips
// the sensor about an equatorial axis.
double f_qs(const Chi& chi);
double f_qs(const cmat2& u);

// Conventional gate fidelity. Unitary realization: |Tr(xi U_target^dag)|/2.
// General channel: sqrt(Tr(chi chi_target)); the square root makes the two
// branches coincide on unitary channels.
double f_qc(const Chi& chi, const cmat2& target);
double f_qc(const cmat2& u, const cmat2& target);

// Closed form for a rectangular pi pulse at eps = 0, r = Delta/Omega.
double rect_pi_f_qs(double r);
double rect_pi_f_qc(double r);

// eta_r = eta_in / f_qs.
double sensitivity_link(double eta_in, double fqs);

// Per-point f_qs and f_qc of a pulse sequence, plus weighted means.
// Columns: delta_ratio, eps, weight, f_qs, f_qc. Weighted means are appended
// through the two out-parameters.
SweepResult robustness_profile(const PulseSequence& seq, const ErrorGrid& grid,
                               double* mean_fqs = nullptr,
                               double* mean_fqc = nullptr, int threads = 1);

// Weighted mean of an arbitrary per-point metric.
double ensemble_average(const std::function<double(const ErrorPoint&)>& metric,
                        const ErrorGrid& distribution);

}  // namespace ddsense
