#pragma once

#include <cstdint>
#include <vector>

#include "ddsense/control.hpp"
#include "ddsense/evalfn.hpp"

namespace ddsense {

struct OptimConfig {
  int n_segments = 5;
  ErrorGrid grid;
  int max_iters = 2000;
  double step_init = 0.5;
  double tol = 1e-9;
  double duration_penalty = 0.0;
  std::uint64_t seed = 1;
  int threads = 1;
};

// The stock training setup: defaults above plus an 8 x 4 uniform grid over
// |delta/omega| <= 0.5, |eps| <= 0.1. Even point counts keep the exact
// zero-error point off the grid, where a rectangular pi is unbeatable.
OptimConfig default_optim_config();

struct OptimResult {
  PulseSequence sequence;
  std::vector<double> history;  // objective after each accepted step
  double objective = 0.0;
  bool no_improvement = false;
  int iterations = 0;
};

// Mean F_QS over the grid minus duration_penalty * (sum of angles) / pi.
double objective(const PulseSequence& seq, const ErrorGrid& grid,
                 double duration_penalty, int threads = 1);

// Central finite-difference gradient (step 1e-6 rad) of the objective with
// respect to the flattened (angle, phase) parameter vector.
std::vector<double> objective_gradient(const PulseSequence& seq,
                                       const ErrorGrid& grid,
                                       double duration_penalty,
                                       double fd_step = 1e-6,
                                       int threads = 1);

// 4-point Richardson-extrapolated gradient; used to validate the FD one.
std::vector<double> objective_gradient_richardson(const PulseSequence& seq,
                                                  const ErrorGrid& grid,
                                                  double duration_penalty,
                                                  double h = 1e-3);

// Random starting sequence: angles uniform in (0.2 pi, 1.5 pi), phases
// uniform in [-pi, pi).
PulseSequence random_init(int n_segments, std::uint64_t seed);

// Backtracking gradient ascent; history is monotone non-decreasing.
OptimResult grad_ascent(const OptimConfig& config, const PulseSequence& init);
OptimResult grad_ascent(const OptimConfig& config);  // random init from seed

}  // namespace ddsense
