#include "ddsense/nmr.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ddsense/errors.hpp"
#include "ddsense/evalfn.hpp"

namespace ddsense {

namespace {

cmat kron(const cmat& a, const cmat& b) {
  cmat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// sigma_axis/2 acting on nucleus `which` of an n-spin register.
cmat nuclear_op(int n_spins, int which, int axis) {
  static const Pauli kAxes[3] = {Pauli::X, Pauli::Y, Pauli::Z};
  cmat out = cmat::Identity(1, 1);
  for (int n = 0; n < n_spins; ++n) {
    cmat2 factor =
        n == which ? cmat2(0.5 * pauli(kAxes[axis])) : cmat2::Identity();
    out = kron(out, factor);
  }
  return out;
}

cmat projector_x_full(Eigen::Index bath_dim) {
  cmat2 px;
  px << 0.5, 0.5, 0.5, 0.5;
  return kron(px, cmat::Identity(bath_dim, bath_dim));
}

double signal_from_propagator(const cmat& u, const cmat& rho_init,
                              const cmat& px_full) {
  cmat evolved = u * rho_init * u.adjoint();
  complexd p = (px_full * evolved).trace();
  return 2.0 * p.real() - 1.0;
}

double percentile(std::vector<double> values, double q) {
  std::sort(values.begin(), values.end());
  double pos = q * static_cast<double>(values.size() - 1);
  auto idx = static_cast<std::size_t>(pos);
  if (idx + 1 >= values.size()) return values.back();
  double frac = pos - static_cast<double>(idx);
  return values[idx] * (1.0 - frac) + values[idx + 1] * frac;
}

}  // namespace

void validate(const BathSpec& bath) {
  if (bath.n_spins < 1) throw ConfigError("BathSpec: need at least one spin");
  if (bath.n_spins > 5)
    throw DimensionTooLarge("BathSpec: at most 5 bath spins supported");
  auto n = static_cast<std::size_t>(bath.n_spins);
  if (bath.larmor_0.size() != n || bath.larmor_1.size() != n)
    throw DimensionMismatch("BathSpec: Larmor vector lists must have n_spins entries");
  if (!bath.couplings.empty()) {
    if (bath.couplings.size() != n)
      throw DimensionMismatch("BathSpec: coupling matrix must be n_spins x n_spins");
    for (const auto& row : bath.couplings)
      if (row.size() != n)
        throw DimensionMismatch("BathSpec: coupling matrix must be n_spins x n_spins");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if ((bath.couplings[i][j] - bath.couplings[j][i]).norm() > 1e-12)
          throw DimensionMismatch("BathSpec: coupling matrix must be symmetric");
  }
  if (bath.inverse_temperature < 0.0)
    throw ConfigError("BathSpec: inverse_temperature must be >= 0");
}

void validate(const NmrConfig& cfg) {
  validate(cfg.bath);
  validate(cfg.dd);
  validate(cfg.err);
}

cmat bath_hamiltonian(const BathSpec& bath, int ms) {
  validate(bath);
  if (ms != 0 && ms != 1)
    throw ConfigError("bath_hamiltonian: ms must be 0 or 1");
  const auto& larmor = ms == 0 ? bath.larmor_0 : bath.larmor_1;
  Eigen::Index dim = Eigen::Index{1} << bath.n_spins;
  cmat h = cmat::Zero(dim, dim);
  for (int n = 0; n < bath.n_spins; ++n)
    for (int axis = 0; axis < 3; ++axis)
      h += larmor[static_cast<std::size_t>(n)][axis] *
           nuclear_op(bath.n_spins, n, axis);
  if (!bath.couplings.empty()) {
    for (int n = 0; n < bath.n_spins; ++n)
      for (int m = 0; m < n; ++m)
        for (int axis = 0; axis < 3; ++axis) {
          double c = bath.couplings[static_cast<std::size_t>(n)]
                                   [static_cast<std::size_t>(m)][axis];
          if (c != 0.0)
            h += c * (nuclear_op(bath.n_spins, n, axis) *
                      nuclear_op(bath.n_spins, m, axis));
        }
  }
  return h;
}

cmat bath_thermal_state(const BathSpec& bath) {
  validate(bath);
  Eigen::Index dim = Eigen::Index{1} << bath.n_spins;
  if (bath.inverse_temperature == 0.0)
    return cmat::Identity(dim, dim) / static_cast<double>(dim);
  Eigen::SelfAdjointEigenSolver<cmat> es(bath_hamiltonian(bath, 0));
  Eigen::VectorXd weights =
      (-bath.inverse_temperature *
       (es.eigenvalues().array() - es.eigenvalues().minCoeff()))
          .exp();
  weights /= weights.sum();
  return es.eigenvectors() * weights.asDiagonal().toDenseMatrix().cast<complexd>() *
         es.eigenvectors().adjoint();
}

cmat build_joint_hamiltonian(const BathSpec& bath, double electron_detuning) {
  validate(bath);
  Eigen::Index bath_dim = Eigen::Index{1} << bath.n_spins;
  cmat h = cmat::Zero(2 * bath_dim, 2 * bath_dim);
  h.topLeftCorner(bath_dim, bath_dim) = bath_hamiltonian(bath, 0);
  h.bottomRightCorner(bath_dim, bath_dim) =
      bath_hamiltonian(bath, 1) +
      electron_detuning * cmat::Identity(bath_dim, bath_dim);
  return h;
}

double cpmg_signal(const NmrConfig& cfg) {
  validate(cfg);
  cmat h = build_joint_hamiltonian(cfg.bath, cfg.electron_detuning);
  cmat u = dd_propagator(cfg.dd, cfg.err, h);
  Eigen::Index bath_dim = Eigen::Index{1} << cfg.bath.n_spins;
  cmat2 px;
  px << 0.5, 0.5, 0.5, 0.5;
  cmat rho = kron(px, bath_thermal_state(cfg.bath));
  return signal_from_propagator(u, rho, projector_x_full(bath_dim));
}

TauScanResult scan_tau(const NmrConfig& cfg, double tau_min, double tau_max,
                       int n_points, int threads) {
  validate(cfg);
  if (!(tau_min > 0.0) || !(tau_max > tau_min))
    throw ConfigError("scan_tau: need 0 < tau_min < tau_max");
  if (n_points < 2) throw ConfigError("scan_tau: need at least 2 points");

  cmat h = build_joint_hamiltonian(cfg.bath, cfg.electron_detuning);
  Eigen::Index bath_dim = Eigen::Index{1} << cfg.bath.n_spins;
  cmat px_full = projector_x_full(bath_dim);
  cmat2 px;
  px << 0.5, 0.5, 0.5, 0.5;
  cmat rho = kron(px, bath_thermal_state(cfg.bath));

  std::vector<double> taus(static_cast<std::size_t>(n_points));
  double dtau = (tau_max - tau_min) / (n_points - 1);
  for (int i = 0; i < n_points; ++i) taus[static_cast<std::size_t>(i)] = tau_min + i * dtau;

  std::vector<double> signal(taus.size());
  parallel_for_indexed(taus.size(), threads, [&](std::size_t i) {
    DDSequence dd = cfg.dd;
    dd.tau = taus[i];
    signal[i] = signal_from_propagator(dd_propagator(dd, cfg.err, h), rho,
                                       px_full);
  });

  TauScanResult result;
  result.table.columns = {"tau_s", "signal"};
  result.table.rows.reserve(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i)
    result.table.rows.push_back({taus[i], signal[i]});

  double baseline = percentile(signal, 0.75);
  double s_min = *std::min_element(signal.begin(), signal.end());
  double range = baseline - s_min;
  if (range < 1e-9) return result;

  std::vector<double> diffs;
  diffs.reserve(signal.size() - 1);
  for (std::size_t i = 0; i + 1 < signal.size(); ++i)
    diffs.push_back(std::abs(signal[i + 1] - signal[i]));
  double noise = 1.0484 * percentile(diffs, 0.5);
  double threshold = baseline - std::max(3.0 * noise, 0.02 * range);

  std::vector<std::size_t> candidates;
  for (std::size_t i = 1; i + 1 < signal.size(); ++i)
    if (signal[i] <= signal[i - 1] && signal[i] < signal[i + 1] &&
        signal[i] < threshold)
      candidates.push_back(i);
  std::sort(candidates.begin(), candidates.end(),
            [&](std::size_t a, std::size_t b) { return signal[a] < signal[b]; });

  std::vector<bool> covered(signal.size(), false);
  for (std::size_t i : candidates) {
    if (covered[i]) continue;
    std::size_t lo = i, hi = i;
    while (lo > 0 && signal[lo - 1] >= signal[lo] && !covered[lo - 1]) --lo;
    while (hi + 1 < signal.size() && signal[hi + 1] >= signal[hi] &&
           !covered[hi + 1])
      ++hi;
    for (std::size_t j = lo; j <= hi; ++j) covered[j] = true;
    if (hi - lo + 1 < 5) continue;
    std::vector<double> wx(taus.begin() + static_cast<std::ptrdiff_t>(lo),
                           taus.begin() + static_cast<std::ptrdiff_t>(hi + 1));
    std::vector<double> wy(signal.begin() + static_cast<std::ptrdiff_t>(lo),
                           signal.begin() + static_cast<std::ptrdiff_t>(hi + 1));
    double width_seed = std::max((wx.back() - wx.front()) / 6.0, dtau);
    result.dips.push_back(fit_gaussian_dip(wx, wy, taus[i], width_seed));
  }
  std::sort(result.dips.begin(), result.dips.end(),
            [](const GaussianDip& a, const GaussianDip& b) {
              return a.center < b.center;
            });
  return result;
}

NScanResult scan_n(const NmrConfig& cfg, const std::vector<int>& n_values,
                   int threads, bool must_converge) {
  validate(cfg);
  if (n_values.empty()) throw ConfigError("scan_n: empty N list");
  for (int n : n_values)
    if (n < 2 || n % 2 != 0)
      throw ConfigError("scan_n: every N must be even and >= 2");

  cmat h = build_joint_hamiltonian(cfg.bath, cfg.electron_detuning);
  BathSpec decoupled = cfg.bath;
  decoupled.larmor_1 = decoupled.larmor_0;
  cmat h_ref = build_joint_hamiltonian(decoupled, cfg.electron_detuning);
  Eigen::Index bath_dim = Eigen::Index{1} << cfg.bath.n_spins;
  cmat px_full = projector_x_full(bath_dim);
  cmat2 px;
  px << 0.5, 0.5, 0.5, 0.5;
  cmat rho = kron(px, bath_thermal_state(cfg.bath));
  cmat rho_ref = kron(px, bath_thermal_state(decoupled));

  std::vector<double> depth(n_values.size());
  parallel_for_indexed(n_values.size(), threads, [&](std::size_t i) {
    DDSequence dd = cfg.dd;
    dd.n_pulses = n_values[i];
    double s_dip =
        signal_from_propagator(dd_propagator(dd, cfg.err, h), rho, px_full);
    double s_ref = signal_from_propagator(dd_propagator(dd, cfg.err, h_ref),
                                          rho_ref, px_full);
    depth[i] = s_ref - s_dip;
  });

  std::vector<double> n_doubles(n_values.size());
  for (std::size_t i = 0; i < n_values.size(); ++i)
    n_doubles[i] = static_cast<double>(n_values[i]);
  ExpN2Fit fit = fit_exp_n2(n_doubles, depth);
  if (must_converge && !fit.converged)
    throw FitDidNotConverge("scan_n: a exp(-lambda N^2) + b fit did not converge");

  NScanResult result;
  result.fit = fit;
  result.table.columns = {"N", "dip_depth", "fit_a", "fit_lambda", "fit_b"};
  result.table.rows.reserve(n_values.size());
  for (std::size_t i = 0; i < n_values.size(); ++i)
    result.table.rows.push_back(
        {n_doubles[i], depth[i], fit.a, fit.lambda, fit.b});
  return result;
}

SweepResult fqs_scaling_check(const NmrConfig& cfg,
                              const std::vector<double>& delta_ratios,
                              int threads) {
  validate(cfg);
  if (delta_ratios.empty())
    throw ConfigError("fqs_scaling_check: empty detuning list");

  NmrConfig on_resonance = cfg;
  on_resonance.err.delta_ratio = 0.0;
  double s0 = cpmg_signal(on_resonance);

  SweepResult result;
  result.columns = {"delta_ratio", "s_delta", "predicted", "difference",
                    "f_qs"};
  result.rows.assign(delta_ratios.size(), {});

  cmat h = build_joint_hamiltonian(cfg.bath, cfg.electron_detuning);
  Eigen::Index bath_dim = Eigen::Index{1} << cfg.bath.n_spins;
  cmat px_full = projector_x_full(bath_dim);
  cmat2 px;
  px << 0.5, 0.5, 0.5, 0.5;
  cmat rho = kron(px, bath_thermal_state(cfg.bath));

  parallel_for_indexed(delta_ratios.size(), threads, [&](std::size_t i) {
    ErrorPoint err{delta_ratios[i], cfg.err.eps};
    validate(err);
    double s_delta = signal_from_propagator(
        dd_propagator(cfg.dd, err, h), rho, px_full);
    double f = f_qs(sequence_propagator(cfg.dd.pulse, err));
    double predicted = std::pow(f, cfg.dd.n_pulses) * s0;
    result.rows[i] = {delta_ratios[i], s_delta, predicted, s_delta - predicted,
                      f};
  });
  return result;
}

}  // namespace ddsense
