#include "ddsense/optim.hpp"

#include <algorithm>
#include <cmath>

#include "ddsense/rng.hpp"

namespace ddsense {

namespace {
constexpr double kPi = 3.141592653589793238462643383279;

std::vector<double> flatten(const PulseSequence& seq) {
  std::vector<double> p;
  p.reserve(2 * seq.size());
  for (const auto& seg : seq) {
    p.push_back(seg.angle);
    p.push_back(seg.phase);
  }
  return p;
}

double wrap_phase(double phase) {
  double p = std::fmod(phase + kPi, 2.0 * kPi);
  if (p < 0.0) p += 2.0 * kPi;
  return p - kPi;
}

PulseSequence unflatten(const std::vector<double>& p) {
  PulseSequence seq;
  seq.reserve(p.size() / 2);
  for (std::size_t i = 0; i + 1 < p.size(); i += 2) {
    double angle = std::clamp(p[i], 1e-9, 2.0 * kPi);
    seq.push_back({angle, wrap_phase(p[i + 1])});
  }
  return seq;
}
}  // namespace

OptimConfig default_optim_config() {
  OptimConfig cfg;
  cfg.grid = uniform_grid(0.5, 8, 0.1, 4);
  return cfg;
}

double objective(const PulseSequence& seq, const ErrorGrid& grid,
                 double duration_penalty, int threads) {
  validate(grid);
  std::size_t n = grid.points.size();
  std::vector<double> fqs_vals(n);
  parallel_for_indexed(n, threads, [&](std::size_t i) {
    fqs_vals[i] = f_qs(sequence_propagator(seq, grid.points[i]));
  });
  double mean = weighted_mean(fqs_vals, grid.weights);
  double total_angle = 0.0;
  for (const auto& seg : seq) total_angle += seg.angle;
  return mean - duration_penalty * total_angle / kPi;
}

std::vector<double> objective_gradient(const PulseSequence& seq,
                                       const ErrorGrid& grid,
                                       double duration_penalty, double fd_step,
                                       int threads) {
  std::vector<double> p = flatten(seq);
  std::vector<double> grad(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::vector<double> hi = p, lo = p;
    hi[i] += fd_step;
    lo[i] -= fd_step;
    double f_hi = objective(unflatten(hi), grid, duration_penalty, threads);
    double f_lo = objective(unflatten(lo), grid, duration_penalty, threads);
    grad[i] = (f_hi - f_lo) / (2.0 * fd_step);
  }
  return grad;
}

std::vector<double> objective_gradient_richardson(const PulseSequence& seq,
                                                  const ErrorGrid& grid,
                                                  double duration_penalty,
                                                  double h) {
  std::vector<double> p = flatten(seq);
  std::vector<double> grad(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto at = [&](double delta) {
      std::vector<double> q = p;
      q[i] += delta;
      return objective(unflatten(q), grid, duration_penalty, 1);
    };
    // (8 (f(h) - f(-h)) - (f(2h) - f(-2h))) / (12 h)
    grad[i] =
        (8.0 * (at(h) - at(-h)) - (at(2.0 * h) - at(-2.0 * h))) / (12.0 * h);
  }
  return grad;
}

PulseSequence random_init(int n_segments, std::uint64_t seed) {
  Rng rng(seed);
  PulseSequence seq;
  seq.reserve(static_cast<std::size_t>(n_segments));
  for (int i = 0; i < n_segments; ++i) {
    double angle = rng.uniform(0.2 * kPi, 1.5 * kPi);
    double phase = rng.uniform(-kPi, kPi);
    seq.push_back({angle, phase});
  }
  return seq;
}

OptimResult grad_ascent(const OptimConfig& config, const PulseSequence& init) {
  if (config.max_iters < 1) throw Error("grad_ascent: max_iters < 1");
  if (!(config.tol > 0.0)) throw Error("grad_ascent: tol must be positive");
  validate(config.grid);

  OptimResult result;
  std::vector<double> p = flatten(init);
  double obj = objective(unflatten(p), config.grid, config.duration_penalty,
                         config.threads);
  result.history.push_back(obj);

  int failed_searches = 0;
  bool ever_improved = false;
  bool converged = false;
  for (int it = 0; it < config.max_iters && !converged; ++it) {
    result.iterations = it + 1;
    std::vector<double> grad =
        objective_gradient(unflatten(p), config.grid, config.duration_penalty,
                           1e-6, config.threads);
    double gnorm = 0.0;
    for (double g : grad) gnorm += g * g;
    gnorm = std::sqrt(gnorm);
    if (gnorm < 1e-14) break;

    double step = config.step_init;
    bool accepted = false;
    for (int halvings = 0; halvings < 40; ++halvings) {
      std::vector<double> trial = p;
      for (std::size_t i = 0; i < p.size(); ++i) trial[i] += step * grad[i];
      double obj_new = objective(unflatten(trial), config.grid,
                                 config.duration_penalty, config.threads);
      if (obj_new > obj) {
        double gain = obj_new - obj;
        p = trial;
        obj = obj_new;
        result.history.push_back(obj);
        accepted = true;
        ever_improved = true;
        converged = gain < config.tol;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (ever_improved) break;  // exhausted step range at a local optimum
      if (++failed_searches >= 10) {
        result.no_improvement = true;
        break;
      }
    }
  }

  result.sequence = result.no_improvement ? init : unflatten(p);
  result.objective = obj;
  return result;
}

OptimResult grad_ascent(const OptimConfig& config) {
  return grad_ascent(config, random_init(config.n_segments, config.seed));
}

}  // namespace ddsense
