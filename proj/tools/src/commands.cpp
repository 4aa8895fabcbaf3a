#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "ddsense/errors.hpp"
#include "ddsense/evalfn.hpp"
#include "ddsense/nmr.hpp"
#include "ddsense/optim.hpp"
#include "ddsense/rng.hpp"
#include "ddsense/sense.hpp"
#include "ddsense/tomo.hpp"
#include "emit.hpp"
#include "pulse_io.hpp"

namespace ddsense::cli {

namespace {

Meta meta_for(const ConfigMap& config) {
  return Meta{config_hash(config), config.get_uint64("run.seed", 1)};
}

int threads_for(const ConfigMap& config) {
  return static_cast<int>(config.get_int("run.threads", 0));
}

std::string format_for(const ConfigMap& config) {
  return config.get_string("run.format", "csv");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  return out;
}

ErrorGrid grid_from(const ConfigMap& config, double delta_max, int n_delta,
                    double eps_max, int n_eps) {
  return uniform_grid(
      config.get_double("grid.delta_max", delta_max),
      static_cast<int>(config.get_int("grid.n_delta", n_delta)),
      config.get_double("grid.eps_max", eps_max),
      static_cast<int>(config.get_int("grid.n_eps", n_eps)));
}

ErrorPoint error_from(const ConfigMap& config) {
  ErrorPoint err{config.get_double("error.delta_ratio", 0.0),
                 config.get_double("error.eps", 0.0)};
  validate(err);
  return err;
}

SensorParams sensor_from(const ConfigMap& config) {
  SensorParams params;
  params.gamma_e = config.get_double("sensor.gamma_e", params.gamma_e);
  params.t2 = config.get_double("sensor.t2", params.t2);
  params.stretch_p = config.get_double("sensor.stretch_p", params.stretch_p);
  params.contrast = config.get_double("sensor.contrast", params.contrast);
  params.counts_rate =
      config.get_double("sensor.counts_rate", params.counts_rate);
  params.t_read = config.get_double("sensor.t_read", params.t_read);
  params.t_overhead =
      config.get_double("sensor.t_overhead", params.t_overhead);
  validate(params);
  return params;
}

BathSpec bath_from(const ConfigMap& config) {
  BathSpec bath;
  bath.n_spins = static_cast<int>(config.get_int("bath.n_spins", 1));
  if (bath.n_spins < 1 || bath.n_spins > 5)
    throw ConfigError("bath.n_spins must lie in 1..5");
  for (int n = 1; n <= bath.n_spins; ++n) {
    std::string key0 = "bath.larmor0_" + std::to_string(n);
    std::string key1 = "bath.larmor1_" + std::to_string(n);
    std::vector<double> v0 = config.get_doubles(key0, {});
    std::vector<double> v1 = config.get_doubles(key1, {});
    if (v0.size() != 3 || v1.size() != 3)
      throw ConfigError("bath spin " + std::to_string(n) + " needs 3-vector " +
                        key0 + " and " + key1);
    bath.larmor_0.emplace_back(v0[0], v0[1], v0[2]);
    bath.larmor_1.emplace_back(v1[0], v1[1], v1[2]);
  }
  bool any_coupling = false;
  std::vector<std::vector<Eigen::Vector3d>> couplings(
      static_cast<std::size_t>(bath.n_spins),
      std::vector<Eigen::Vector3d>(static_cast<std::size_t>(bath.n_spins),
                                   Eigen::Vector3d::Zero()));
  for (int n = 1; n <= bath.n_spins; ++n)
    for (int m = 1; m < n; ++m) {
      std::string key = "bath.coupling_" + std::to_string(n) + "_" +
                        std::to_string(m);
      if (!config.has(key)) continue;
      std::vector<double> c = config.get_doubles(key, {});
      if (c.size() != 3)
        throw ConfigError(key + " needs a 3-vector");
      any_coupling = true;
      Eigen::Vector3d v(c[0], c[1], c[2]);
      couplings[static_cast<std::size_t>(n - 1)]
               [static_cast<std::size_t>(m - 1)] = v;
      couplings[static_cast<std::size_t>(m - 1)]
               [static_cast<std::size_t>(n - 1)] = v;
    }
  if (any_coupling) bath.couplings = std::move(couplings);
  bath.inverse_temperature =
      config.get_double("bath.inverse_temperature", 0.0);
  validate(bath);
  return bath;
}

DDSequence dd_from(const ConfigMap& config, const PulseSequence& pulse) {
  DDSequence dd;
  dd.n_pulses = static_cast<int>(config.get_int("dd.n_pulses", 16));
  dd.tau = config.get_double("dd.tau", 613e-9);
  std::string pattern = config.get_string("dd.pattern", "cpmg");
  if (pattern == "cpmg")
    dd.pattern = DDPattern::CPMG;
  else if (pattern == "xy4")
    dd.pattern = DDPattern::XY4;
  else if (pattern == "kdd")
    dd.pattern = DDPattern::KDD;
  else
    throw ConfigError("dd.pattern must be cpmg, xy4, or kdd");
  dd.pulse = pulse;
  validate(dd);
  return dd;
}

}  // namespace

int cmd_fidelity_map(const ConfigMap& config) {
  PulseSequence pulse = load_pulse(config.get_string("pulse.name", "rect"));
  ErrorGrid grid = grid_from(config, 1.0, 21, 0.0, 1);
  SweepResult profile =
      robustness_profile(pulse, grid, nullptr, nullptr, threads_for(config));

  SweepResult table;
  table.columns = {"delta_ratio", "eps", "f_qs", "f_qc"};
  table.rows.reserve(profile.rows.size());
  for (const auto& row : profile.rows)
    table.rows.push_back({row[0], row[1], row[3], row[4]});

  auto out = open_output(config.get_string("run.output", "fidelity_map.csv"));
  write_table(out, meta_for(config), table, format_for(config));
  return 0;
}

int cmd_optimize(const ConfigMap& config) {
  OptimConfig opt = default_optim_config();
  opt.n_segments =
      static_cast<int>(config.get_int("optimize.n_segments", opt.n_segments));
  opt.max_iters =
      static_cast<int>(config.get_int("optimize.max_iters", opt.max_iters));
  opt.step_init = config.get_double("optimize.step_init", opt.step_init);
  opt.tol = config.get_double("optimize.tol", opt.tol);
  opt.duration_penalty =
      config.get_double("optimize.duration_penalty", opt.duration_penalty);
  opt.seed = config.get_uint64("run.seed", opt.seed);
  opt.threads = threads_for(config);
  if (config.has("grid.delta_max") || config.has("grid.n_delta") ||
      config.has("grid.eps_max") || config.has("grid.n_eps"))
    opt.grid = grid_from(config, 0.5, 8, 0.1, 4);

  OptimResult result;
  std::string init = config.get_string("optimize.init", "random");
  if (init == "random")
    result = grad_ascent(opt);
  else
    result = grad_ascent(opt, load_pulse(init));

  Meta meta = meta_for(config);
  {
    auto out = open_output(config.get_string("run.output", "pulse.json"));
    write_pulse_json(out, meta, result.sequence, result.objective);
  }
  {
    SweepResult history;
    history.columns = {"iteration", "objective"};
    for (std::size_t i = 0; i < result.history.size(); ++i)
      history.rows.push_back({static_cast<double>(i), result.history[i]});
    auto out = open_output(
        config.get_string("optimize.history_output", "history.csv"));
    write_table(out, meta, history, format_for(config));
  }
  if (result.no_improvement) {
    std::cerr << "optimize: no improving step found from the initial guess\n";
    return 3;
  }
  return 0;
}

int cmd_echo_sense(const ConfigMap& config) {
  PulseSequence pulse = load_pulse(config.get_string("pulse.name", "rect"));
  SensorParams params = sensor_from(config);
  std::vector<double> deltas = config.get_doubles(
      "sense.delta_ratios", {0.0, 0.25, 0.5, 0.75, 1.0});
  double eps = config.get_double("sense.eps", 0.0);

  EchoConfig base;
  base.t_sense = config.get_double("sense.t_sense", base.t_sense);
  base.shots = config.get_int("sense.shots", 80000000);
  base.pi_pulse = pulse;
  int n_bias = static_cast<int>(config.get_int("sense.n_bias", 7));
  double span = config.get_double("sense.span_fraction", 0.1);
  std::uint64_t seed = config.get_uint64("run.seed", 1);

  SweepResult table;
  table.columns = {"delta_ratio", "eps", "eta_r_T_per_sqrtHz", "f_qs",
                   "eta_r_times_fqs"};
  table.rows.assign(deltas.size(), {});
  std::vector<int> flagged(deltas.size(), 0);

  parallel_for_indexed(deltas.size(), threads_for(config), [&](std::size_t i) {
    EchoConfig cfg = base;
    cfg.err = ErrorPoint{deltas[i], eps};
    validate(cfg.err);
    cfg.seed = substream_seed(seed, i);
    double f = f_qs(sequence_propagator(pulse, cfg.err));
    double eta = std::nan("");
    try {
      eta = estimate_sensitivity(cfg, params,
                                 make_bias_sweep(cfg, params, n_bias, span));
    } catch (const SlopeTooSmall&) {
      flagged[i] = 1;
    }
    table.rows[i] = {deltas[i], eps, eta, f, eta * f};
  });

  auto out = open_output(config.get_string("run.output", "echo_sense.csv"));
  Meta meta = meta_for(config);
  std::string format = format_for(config);
  if (format == "csv") {
    write_meta(out, meta);
    out << "delta_ratio,eps,eta_r_T_per_sqrtHz,f_qs,eta_r_times_fqs\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const auto& row = table.rows[i];
      for (std::size_t c = 0; c < row.size(); ++c)
        out << (c ? "," : "") << format_double(row[c]);
      out << "\n";
      if (flagged[i])
        out << "# slope-too-small delta_ratio=" << format_double(row[0])
            << "\n";
    }
  } else {
    write_table(out, meta, table, format);
  }

  bool any_flagged = false;
  for (int f : flagged) any_flagged |= f != 0;
  if (any_flagged) {
    std::cerr << "echo-sense: slope below noise floor at one or more points\n";
    return 4;
  }
  return 0;
}

int cmd_nmr(const ConfigMap& config) {
  NmrConfig cfg;
  cfg.bath = bath_from(config);
  cfg.dd = dd_from(config,
                   load_pulse(config.get_string("pulse.name", "rect")));
  cfg.err = error_from(config);
  cfg.electron_detuning = config.get_double("nmr.electron_detuning", 0.0);
  int threads = threads_for(config);

  std::string mode = config.get_string("nmr.mode", "scan-tau");
  auto out = open_output(config.get_string("run.output", "nmr.csv"));
  Meta meta = meta_for(config);
  std::string format = format_for(config);

  if (mode == "scan-tau") {
    double tau_min = config.get_double("nmr.tau_min", 300e-9);
    double tau_max = config.get_double("nmr.tau_max", 2200e-9);
    int n_points = static_cast<int>(config.get_int("nmr.n_points", 381));
    TauScanResult scan = scan_tau(cfg, tau_min, tau_max, n_points, threads);
    write_table(out, meta, scan.table, format);
    for (const auto& dip : scan.dips) {
      out << "# dip center=" << format_double(dip.center)
          << " depth=" << format_double(dip.depth)
          << " width=" << format_double(dip.width)
          << " converged=" << (dip.converged ? 1 : 0) << "\n";
      if (!dip.converged)
        std::cerr << "nmr: dip fit near tau = " << format_double(dip.center)
                  << " s did not converge\n";
    }
    return 0;
  }
  if (mode == "scan-n") {
    std::vector<long long> raw =
        config.get_ints("nmr.n_values", {2, 4, 8, 16, 24, 32});
    std::vector<int> n_values(raw.begin(), raw.end());
    NScanResult scan = scan_n(cfg, n_values, threads, false);
    write_table(out, meta, scan.table, format);
    if (!scan.fit.converged)
      std::cerr << "nmr: a exp(-lambda N^2) + b fit did not converge\n";
    return 0;
  }
  if (mode == "scaling") {
    std::vector<double> deltas =
        config.get_doubles("nmr.delta_ratios", {0.0, 0.05, 0.1});
    SweepResult check = fqs_scaling_check(cfg, deltas, threads);
    write_table(out, meta, check, format);
    return 0;
  }
  throw ConfigError("nmr.mode must be scan-tau, scan-n, or scaling");
}

int cmd_qpt(const ConfigMap& config) {
  PulseSequence pulse = load_pulse(config.get_string("pulse.name", "rect"));
  ErrorPoint err = error_from(config);
  std::int64_t shots = config.get_int("qpt.shots", 10000);
  if (shots < 0) throw ConfigError("qpt.shots must be >= 0");
  std::uint64_t seed = config.get_uint64("run.seed", 1);

  cmat2 realized = sequence_propagator(pulse, err);
  Chi chi_sim = unitary_to_chi(realized);
  std::vector<TomoRecord> records = simulate_tomography(chi_sim, shots, seed);
  Chi chi_rec = linear_inversion(records);
  if (shots > 0) chi_rec = mle_project(chi_rec);

  cmat2 target = sequence_propagator(pulse, ErrorPoint{0.0, 0.0});

  auto out = open_output(config.get_string("run.output", "qpt.csv"));
  write_meta(out, meta_for(config));
  out << "# records\n";
  out << "input,observable,mean,shots\n";
  for (const auto& rec : records)
    out << to_string(rec.input) << "," << to_string(rec.observable) << ","
        << format_double(rec.mean) << "," << rec.shots << "\n";
  out << "# chi_real\n";
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j)
      out << (j ? "," : "") << format_double(chi_rec(i, j).real());
    out << "\n";
  }
  out << "# chi_imag\n";
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j)
      out << (j ? "," : "") << format_double(chi_rec(i, j).imag());
    out << "\n";
  }
  out << "# summary\n";
  out << "f_qs,f_qc\n";
  out << format_double(f_qs(chi_rec)) << "," << format_double(f_qc(chi_rec, target))
      << "\n";
  return 0;
}

}  // namespace ddsense::cli
