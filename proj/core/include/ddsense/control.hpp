#pragma once

#include <vector>

#include "ddsense/qcore.hpp"
#include "ddsense/sweep.hpp"

namespace ddsense {

// One piecewise-constant drive segment: nominal rotation angle at eps = 0 and
// the equatorial axis angle (axis = cos(phase) x + sin(phase) y).
struct PulseSegment {
  double angle;  // rad, 0 < angle <= 4 pi
  double phase;  // rad, [-pi, pi]
};

using PulseSequence = std::vector<PulseSegment>;

// Control error coordinates: detuning as a fraction of the Rabi frequency,
// and fractional amplitude miscalibration (realized Rabi = (1 + eps) Omega).
struct ErrorPoint {
  double delta_ratio = 0.0;  // |.| <= 2
  double eps = 0.0;          // |.| < 1
};

enum class DDPattern { CPMG, XY4, KDD };

// Decoupling train. `tau` is HALF the inter-pulse spacing: one unit is
// [tau - pi - 2 tau - pi - tau], repeated n_pulses/2 times, which puts the
// k-th nuclear resonance at tau_k = (2k-1) pi / (2 omega).
struct DDSequence {
  int n_pulses = 2;       // N, even
  double tau = 0.0;       // s
  DDPattern pattern = DDPattern::CPMG;
  PulseSequence pulse;    // the pi operation
};

void validate(const PulseSegment& seg);
void validate(const ErrorPoint& err);
void validate(const DDSequence& dd);

// Per-pulse phase offsets of a pattern (cycled over the train).
std::vector<double> pattern_phases(DDPattern pattern);

// exp(-i t H) with H = (Delta/2) sz + ((1+eps) Omega/2)(cos(phase) sx +
// sin(phase) sy) and t = angle/Omega; Omega cancels.
cmat2 segment_propagator(const PulseSegment& seg, const ErrorPoint& err);

// Ordered product, first segment applied first; optional extra phase added
// to every segment (used for DD pattern offsets).
cmat2 sequence_propagator(const PulseSequence& seq, const ErrorPoint& err,
                          double phase_offset = 0.0);

// The 5-piece composite pi pulse shipped as a builtin.
PulseSequence composite_pi();

// Single rectangular pi pulse about x.
PulseSequence rect_pi();

// Full train propagator over free_H (electron-only 2x2, or joint
// electron (x) bath with pulses acting as pulse (x) I). Pulses are
// instantaneous; free_H generates the inter-pulse evolution.
cmat dd_propagator(const DDSequence& dd, const ErrorPoint& err,
                   const cmat& free_h);

// Rabi nutation curve P0(t) = 1 - C/2 (1 - cos(2 pi omega t)) e^{-t/T1rho}.
SweepResult simulate_rabi(double omega_hz, double t_max, double t1rho,
                          double contrast, int n_points = 201);

}  // namespace ddsense
