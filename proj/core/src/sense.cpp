#include "ddsense/sense.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "ddsense/errors.hpp"
#include "ddsense/qcore.hpp"
#include "ddsense/rng.hpp"

namespace ddsense {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Noiseless count-normalized echo level for an already-validated config.
double echo_level(const EchoConfig& cfg, const SensorParams& params) {
  const ErrorPoint perfect{0.0, 0.0};
  cmat2 u0 = segment_propagator({kPi / 2, kPi / 2}, perfect);
  cmat2 uf = segment_propagator({kPi / 2, -kPi / 2}, perfect);
  cmat2 u_pi = sequence_propagator(cfg.pi_pulse, cfg.err);

  double half_phase = params.gamma_e * cfg.b0 * cfg.t_sense / 2.0;
  cmat2 rz_plus;
  rz_plus << std::exp(complexd(0.0, -half_phase / 2.0)), 0.0, 0.0,
      std::exp(complexd(0.0, half_phase / 2.0));
  cmat2 rz_minus = rz_plus.adjoint();

  cmat2 rho = cmat2::Zero();
  rho(0, 0) = 1.0;
  auto conjugate = [&rho](const cmat2& u) { rho = u * rho * u.adjoint(); };
  conjugate(u0);
  conjugate(rz_plus);
  conjugate(u_pi);
  conjugate(rz_minus);

  double env = std::exp(-std::pow(cfg.t_sense / params.t2, params.stretch_p));
  rho(0, 1) *= env;
  rho(1, 0) *= env;
  conjugate(uf);

  double p_up = std::clamp(rho(0, 0).real(), 0.0, 1.0);
  return 1.0 - params.contrast * (1.0 - p_up);
}

double sampled_level(const EchoConfig& cfg, const SensorParams& params,
                     std::uint64_t seed) {
  double level = echo_level(cfg, params);
  if (cfg.shots <= 0) return level;
  double photons_per_shot = params.counts_rate * params.t_read;
  double mean = static_cast<double>(cfg.shots) * photons_per_shot * level;
  Rng rng(seed);
  double counts = static_cast<double>(rng.poisson(mean));
  return counts / (static_cast<double>(cfg.shots) * photons_per_shot);
}

double fringe_period(const EchoConfig& cfg, const SensorParams& params) {
  return 2.0 * kPi / (params.gamma_e * cfg.t_sense);
}

// Bias field of maximum |dS/dB| within one fringe, from the noiseless model.
double max_slope_bias(const EchoConfig& cfg, const SensorParams& params) {
  const int n = 720;
  double period = fringe_period(cfg, params);
  double db = period / n;
  std::vector<double> level(n);
  EchoConfig probe = cfg;
  probe.shots = 0;
  for (int i = 0; i < n; ++i) {
    probe.b0 = i * db;
    level[i] = echo_level(probe, params);
  }
  int best = 0;
  double best_slope = -1.0;
  for (int i = 0; i < n; ++i) {
    double slope =
        std::abs(level[(i + 1) % n] - level[(i + n - 1) % n]) / (2.0 * db);
    if (slope > best_slope) {
      best_slope = slope;
      best = i;
    }
  }
  return best * db;
}

}  // namespace

void validate(const SensorParams& params) {
  if (!(params.gamma_e > 0.0) || !(params.t2 > 0.0) ||
      !(params.stretch_p > 0.0) || !(params.counts_rate > 0.0) ||
      !(params.t_read > 0.0) || !(params.t_overhead > 0.0))
    throw ConfigError("SensorParams: all fields must be positive");
  if (!(params.contrast > 0.0) || !(params.contrast < 1.0))
    throw ConfigError("SensorParams: contrast must lie in (0, 1)");
}

void validate(const EchoConfig& cfg) {
  if (cfg.b0 < 0.0) throw ConfigError("EchoConfig: b0 must be >= 0");
  if (!(cfg.t_sense > 0.0)) throw ConfigError("EchoConfig: t_sense must be > 0");
  if (cfg.pi_pulse.empty())
    throw EmptySequence("EchoConfig: pi_pulse is empty");
  validate(cfg.err);
}

double echo_signal(const EchoConfig& cfg, const SensorParams& params) {
  validate(params);
  validate(cfg);
  return sampled_level(cfg, params, cfg.seed);
}

double intrinsic_sensitivity(const SensorParams& params) {
  validate(params);
  double per_count = 1.0 / std::sqrt(params.counts_rate * params.t_read);
  return per_count /
         (params.contrast * params.gamma_e * std::sqrt(params.t2 / 2.0));
}

std::vector<double> make_bias_sweep(const EchoConfig& cfg,
                                    const SensorParams& params, int n_points,
                                    double span_fraction) {
  validate(params);
  validate(cfg);
  if (n_points < 5)
    throw ConfigError("make_bias_sweep: need at least 5 points");
  if (!(span_fraction > 0.0) || !(span_fraction < 1.0))
    throw ConfigError("make_bias_sweep: span_fraction must lie in (0, 1)");
  double center = max_slope_bias(cfg, params);
  double span = span_fraction * fringe_period(cfg, params);
  std::vector<double> values(n_points);
  for (int i = 0; i < n_points; ++i)
    values[i] = center + span * (static_cast<double>(i) / (n_points - 1) - 0.5);
  return values;
}

double estimate_sensitivity(const EchoConfig& cfg, const SensorParams& params,
                            const std::vector<double>& b0_values) {
  validate(params);
  validate(cfg);
  if (b0_values.size() < 5)
    throw ConfigError("estimate_sensitivity: need at least 5 bias values");
  if (cfg.shots <= 0)
    throw ConfigError("estimate_sensitivity: shots must be > 0");

  std::vector<double> sampled(b0_values.size());
  EchoConfig point = cfg;
  for (std::size_t i = 0; i < b0_values.size(); ++i) {
    point.b0 = b0_values[i];
    sampled[i] = sampled_level(point, params, substream_seed(cfg.seed, i));
  }

  double b_mean = 0.0, s_mean = 0.0;
  for (std::size_t i = 0; i < b0_values.size(); ++i) {
    b_mean += b0_values[i];
    s_mean += sampled[i];
  }
  b_mean /= static_cast<double>(b0_values.size());
  s_mean /= static_cast<double>(b0_values.size());
  double cov = 0.0, var = 0.0;
  for (std::size_t i = 0; i < b0_values.size(); ++i) {
    double db = b0_values[i] - b_mean;
    cov += db * (sampled[i] - s_mean);
    var += db * db;
  }
  if (var <= 0.0)
    throw ConfigError("estimate_sensitivity: degenerate bias sweep");
  double slope = cov / var;

  point.b0 = b_mean;
  point.shots = 0;
  double level = echo_level(point, params);
  double sigma_shot =
      std::sqrt(level / (params.counts_rate * params.t_read));
  if (std::abs(slope) < 1e-3 * sigma_shot)
    throw SlopeTooSmall("estimate_sensitivity: |dS/dB| below noise floor");

  double t_cycle = cfg.t_sense + params.t_read + params.t_overhead;
  return sigma_shot * std::sqrt(t_cycle) / std::abs(slope);
}

double estimate_sensitivity(const EchoConfig& cfg, const SensorParams& params) {
  return estimate_sensitivity(cfg, params, make_bias_sweep(cfg, params));
}

double relative_enhancement(const PulseSequence& composite,
                            const PulseSequence& rect, const ErrorPoint& err,
                            const SensorParams& params, const EchoConfig& cfg) {
  EchoConfig comp_cfg = cfg;
  comp_cfg.pi_pulse = composite;
  comp_cfg.err = err;
  comp_cfg.seed = substream_seed(cfg.seed, 1);
  EchoConfig rect_cfg = cfg;
  rect_cfg.pi_pulse = rect;
  rect_cfg.err = err;
  rect_cfg.seed = substream_seed(cfg.seed, 2);
  return estimate_sensitivity(rect_cfg, params) /
         estimate_sensitivity(comp_cfg, params);
}

}  // namespace ddsense
