#pragma once

#include <cstdint>
#include <vector>

#include "ddsense/control.hpp"
#include "ddsense/sweep.hpp"

namespace ddsense {

struct SensorParams {
  double gamma_e = 1.76084e11;    // rad s^-1 T^-1 (2 pi x 28.024 GHz/T)
  double t2 = 8.4e-4;             // s
  double stretch_p = 2.0;
  double contrast = 0.24;         // C
  double counts_rate = 4.8e4;     // counts/s
  double t_read = 2.7e-7;         // s
  double t_overhead = 2e-6;       // s
};

void validate(const SensorParams& params);

struct EchoConfig {
  double b0 = 0.0;                // T, square-wave amplitude
  double t_sense = 4.2e-4;        // s, total free precession
  PulseSequence pi_pulse;         // realized refocusing pulse
  ErrorPoint err;
  std::int64_t shots = 0;         // 0 = noiseless
  std::uint64_t seed = 0;
};

void validate(const EchoConfig& cfg);

// Count-normalized echo readout level in [1 - C, 1]. Noiseless for
// shots = 0; otherwise one Poisson draw of the total photon count across
// all shots, mapped back to the level estimate.
double echo_signal(const EchoConfig& cfg, const SensorParams& params);

// eta_in = (1 / sqrt(n t_r)) / (C gamma_e sqrt(T2 / 2)).
double intrinsic_sensitivity(const SensorParams& params);

// Field values bracketing the maximum-slope (mid-fringe) bias point,
// spanning `span_fraction` of one fringe period.
std::vector<double> make_bias_sweep(const EchoConfig& cfg,
                                    const SensorParams& params,
                                    int n_points = 7,
                                    double span_fraction = 0.1);

// Realized sensitivity in T/sqrt(Hz): per-shot noise from the shot-noise
// model times sqrt(cycle time), divided by the fitted |dS/dB| at mid-fringe.
double estimate_sensitivity(const EchoConfig& cfg, const SensorParams& params,
                            const std::vector<double>& b0_values);
double estimate_sensitivity(const EchoConfig& cfg, const SensorParams& params);

// eta_r(rect) / eta_r(composite) at a common error point.
double relative_enhancement(const PulseSequence& composite,
                            const PulseSequence& rect, const ErrorPoint& err,
                            const SensorParams& params, const EchoConfig& cfg);

}  // namespace ddsense
