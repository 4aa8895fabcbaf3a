#include <doctest.h>

#include <cmath>

#include "ddsense/control.hpp"
#include "ddsense/evalfn.hpp"
#include "ddsense/nmr.hpp"
#include "oracles.hpp"

using namespace ddsense;

namespace {
constexpr double kTwoPi = 6.283185307179586;

BathSpec one_spin_bath() {
  BathSpec bath;
  bath.n_spins = 1;
  bath.larmor_0 = {Eigen::Vector3d(0.0, 0.0, kTwoPi * 407e3)};
  bath.larmor_1 = {Eigen::Vector3d(kTwoPi * 30e3, 0.0, kTwoPi * 422e3)};
  return bath;
}

NmrConfig one_spin_config() {
  NmrConfig cfg;
  cfg.bath = one_spin_bath();
  cfg.dd.n_pulses = 16;
  cfg.dd.tau = 606e-9;
  cfg.dd.pulse = rect_pi();
  return cfg;
}
}  // namespace

TEST_CASE("bath validation tracks shapes and symmetry") {
  BathSpec bath = one_spin_bath();
  CHECK_NOTHROW(validate(bath));
  bath.n_spins = 0;
  CHECK_THROWS_AS(validate(bath), ConfigError);
  bath.n_spins = 6;
  CHECK_THROWS_AS(validate(bath), DimensionTooLarge);
  bath = one_spin_bath();
  bath.larmor_1.clear();
  CHECK_THROWS_AS(validate(bath), DimensionMismatch);

  BathSpec two = one_spin_bath();
  two.n_spins = 2;
  two.larmor_0.push_back(Eigen::Vector3d(0.0, 0.0, kTwoPi * 407e3));
  two.larmor_1.push_back(Eigen::Vector3d(0.0, 0.0, kTwoPi * 399e3));
  two.couplings.assign(2, {Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero()});
  two.couplings[0][1] = Eigen::Vector3d(0.0, 0.0, kTwoPi * 2e3);
  CHECK_THROWS_AS(validate(two), DimensionMismatch);
  two.couplings[1][0] = two.couplings[0][1];
  CHECK_NOTHROW(validate(two));
}

TEST_CASE("bath hamiltonian matches a direct kron construction") {
  BathSpec two = one_spin_bath();
  two.n_spins = 2;
  two.larmor_0.push_back(Eigen::Vector3d(kTwoPi * 1e3, 0.0, kTwoPi * 407e3));
  two.larmor_1.push_back(Eigen::Vector3d(0.0, 0.0, kTwoPi * 399e3));
  two.couplings.assign(2, {Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero()});
  two.couplings[0][1] = Eigen::Vector3d(kTwoPi * 1e3, 0.0, kTwoPi * 2e3);
  two.couplings[1][0] = two.couplings[0][1];

  cmat h = bath_hamiltonian(two, 0);
  oracle::Mat id = oracle::Mat::Identity(2, 2);
  oracle::Mat ref = oracle::Mat::Zero(4, 4);
  for (int axis = 1; axis <= 3; ++axis) {
    oracle::Mat i1 = oracle::kron(oracle::sigma(axis) / 2.0, id);
    oracle::Mat i2 = oracle::kron(id, oracle::sigma(axis) / 2.0);
    ref += two.larmor_0[0][axis - 1] * i1 + two.larmor_0[1][axis - 1] * i2;
    ref += two.couplings[0][1][axis - 1] * i1 * i2;
  }
  CHECK((h - ref).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(is_hermitian(h));
}

TEST_CASE("thermal state is maximally mixed at infinite temperature") {
  BathSpec bath = one_spin_bath();
  cmat rho = bath_thermal_state(bath);
  CHECK((rho - cmat::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-14);

  bath.inverse_temperature = 1e-4;
  cmat cold = bath_thermal_state(bath);
  CHECK(std::abs(cold.trace().real() - 1.0) < 1e-12);
  Eigen::SelfAdjointEigenSolver<cmat> es(cold);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
  CHECK(es.eigenvalues().maxCoeff() > 0.5);
}

TEST_CASE("joint hamiltonian is block conditional plus electron detuning") {
  BathSpec bath = one_spin_bath();
  double fe = kTwoPi * 46e3;
  cmat h = build_joint_hamiltonian(bath, fe);
  REQUIRE(h.rows() == 4);
  cmat h0 = bath_hamiltonian(bath, 0);
  cmat h1 = bath_hamiltonian(bath, 1);
  CHECK((h.topLeftCorner(2, 2) - h0).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((h.bottomRightCorner(2, 2) - h1 - fe * cmat::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-9);
  CHECK(h.topRightCorner(2, 2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("signal is one without hyperfine contrast and real always") {
  NmrConfig cfg = one_spin_config();
  cfg.bath.larmor_1 = cfg.bath.larmor_0;
  double s = cpmg_signal(cfg);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-10));

  NmrConfig live = one_spin_config();
  double sd = cpmg_signal(live);
  CHECK(sd >= -1.0 - 1e-10);
  CHECK(sd <= 1.0 + 1e-10);
  CHECK(sd < 0.999);
}

TEST_CASE("electron detuning alone is refocused by a perfect train") {
  NmrConfig cfg = one_spin_config();
  cfg.bath.larmor_1 = cfg.bath.larmor_0;
  cfg.electron_detuning = kTwoPi * 46e3;
  double s = cpmg_signal(cfg);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("cpmg signal matches an oracle-built propagator") {
  NmrConfig cfg = one_spin_config();
  cfg.dd.n_pulses = 4;
  cfg.dd.tau = 500e-9;
  double s = cpmg_signal(cfg);

  oracle::Mat id2 = oracle::Mat::Identity(2, 2);
  oracle::Mat h = oracle::Mat::Zero(4, 4);
  for (int axis = 1; axis <= 3; ++axis) {
    h.topLeftCorner(2, 2) +=
        cfg.bath.larmor_0[0][axis - 1] * oracle::sigma(axis) / 2.0;
    h.bottomRightCorner(2, 2) +=
        cfg.bath.larmor_1[0][axis - 1] * oracle::sigma(axis) / 2.0;
  }
  oracle::Mat f_tau = oracle::expm_iht(h, cfg.dd.tau);
  oracle::Mat f_2tau = f_tau * f_tau;
  oracle::Mat pulse = oracle::Mat::Zero(4, 4);
  oracle::Mat u_pi =
      oracle::sequence(oracle::rect_pi(), 0.0, 0.0, 0.0);
  pulse.topLeftCorner(2, 2) = u_pi(0, 0) * id2;
  pulse.topRightCorner(2, 2) = u_pi(0, 1) * id2;
  pulse.bottomLeftCorner(2, 2) = u_pi(1, 0) * id2;
  pulse.bottomRightCorner(2, 2) = u_pi(1, 1) * id2;
  oracle::Mat unit = f_tau * pulse * f_2tau * pulse * f_tau;
  oracle::Mat u = unit * unit;

  oracle::Mat px(2, 2);
  px << 0.5, 0.5, 0.5, 0.5;
  oracle::Mat rho0 = oracle::kron(px, id2 / 2.0);
  oracle::Mat px_full = oracle::kron(px, id2);
  oracle::Mat evolved = u * rho0 * u.adjoint();
  double ref = 2.0 * (px_full * evolved).trace().real() - 1.0;
  CHECK(s == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("tau scan finds the first two resonances where theory puts them") {
  NmrConfig cfg = one_spin_config();
  TauScanResult scan = scan_tau(cfg, 300e-9, 2200e-9, 381, 2);
  REQUIRE(scan.table.rows.size() == 381);
  CHECK(scan.table.columns ==
        std::vector<std::string>{"tau_s", "signal"});
  REQUIRE(scan.dips.size() >= 2);

  double w0 = cfg.bath.larmor_0[0].norm();
  double w1 = cfg.bath.larmor_1[0].norm();
  double wbar = 0.5 * (w0 + w1);
  std::vector<double> strong;
  for (const auto& dip : scan.dips)
    if (dip.depth > 0.3) strong.push_back(dip.center);
  REQUIRE(strong.size() == 2);
  double tau1 = kTwoPi / 4.0 / wbar;
  double tau3 = 3.0 * kTwoPi / 4.0 / wbar;
  CHECK(std::abs(strong[0] - tau1) / tau1 < 0.02);
  CHECK(std::abs(strong[1] - tau3) / tau3 < 0.02);

  for (const auto& dip : scan.dips) CHECK(dip.converged);
  bool identical = true;
  TauScanResult again = scan_tau(cfg, 300e-9, 2200e-9, 381, 8);
  for (std::size_t i = 0; i < scan.table.rows.size(); ++i)
    identical = identical && scan.table.rows[i] == again.table.rows[i];
  CHECK(identical);
}

TEST_CASE("n scan depths grow toward saturation and fit the n-squared law") {
  NmrConfig cfg = one_spin_config();
  NScanResult scan = scan_n(cfg, {2, 4, 8, 16, 24, 32}, 2);
  REQUIRE(scan.table.rows.size() == 6);
  CHECK(scan.table.columns ==
        std::vector<std::string>{"N", "dip_depth", "fit_a", "fit_lambda",
                                 "fit_b"});
  for (std::size_t i = 1; i < scan.table.rows.size(); ++i)
    CHECK(scan.table.rows[i][1] > scan.table.rows[i - 1][1]);
  CHECK(scan.fit.converged);
  CHECK(scan.fit.lambda > 0.0);

  double rms = 0.0;
  for (double r : scan.fit.residuals) rms += r * r;
  rms = std::sqrt(rms / static_cast<double>(scan.fit.residuals.size()));
  double dmin = scan.table.rows.front()[1];
  double dmax = scan.table.rows.back()[1];
  CHECK(rms < 0.05 * (dmax - dmin));
}

TEST_CASE("scaling check reproduces the power law at small detuning") {
  NmrConfig cfg = one_spin_config();
  cfg.dd.tau = 613e-9;
  SweepResult check = fqs_scaling_check(cfg, {0.0, 0.02}, 1);
  REQUIRE(check.rows.size() == 2);
  CHECK(check.columns ==
        std::vector<std::string>{"delta_ratio", "s_delta", "predicted",
                                 "difference", "f_qs"});
  CHECK(check.rows[0][3] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(check.rows[0][4] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(check.rows[1][4] ==
        doctest::Approx(rect_pi_f_qs(0.02)).epsilon(1e-9));
}
