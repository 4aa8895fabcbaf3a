#include "ddsense/control.hpp"

#include <cmath>

namespace ddsense {

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
constexpr complexd Ic{0.0, 1.0};
}  // namespace

void validate(const PulseSegment& seg) {
  if (!(seg.angle > 0.0) || seg.angle > 4.0 * kPi)
    throw Error("PulseSegment: angle outside (0, 4pi]");
  if (seg.phase < -kPi || seg.phase > kPi)
    throw Error("PulseSegment: phase outside [-pi, pi]");
}

void validate(const ErrorPoint& err) {
  if (std::abs(err.delta_ratio) > 2.0)
    throw Error("ErrorPoint: |delta_ratio| > 2");
  if (std::abs(err.eps) >= 1.0) throw Error("ErrorPoint: |eps| >= 1");
}

void validate(const DDSequence& dd) {
  if (dd.n_pulses <= 0 || dd.n_pulses % 2 != 0)
    throw Error("DDSequence: n_pulses must be even and positive");
  if (!(dd.tau > 0.0)) throw Error("DDSequence: tau must be positive");
  if (dd.pulse.empty()) throw EmptySequence("DDSequence: empty pi pulse");
  std::size_t plen = pattern_phases(dd.pattern).size();
  if (static_cast<std::size_t>(dd.n_pulses) % plen != 0)
    throw Error("DDSequence: pattern length does not divide n_pulses");
}

std::vector<double> pattern_phases(DDPattern pattern) {
  switch (pattern) {
    case DDPattern::CPMG:
      return {0.0};
    case DDPattern::XY4:
      return {0.0, kPi / 2, 0.0, kPi / 2};
    case DDPattern::KDD:
      return {kPi / 6, 0.0, kPi / 2, 0.0, kPi / 6};
  }
  return {0.0};
}

cmat2 segment_propagator(const PulseSegment& seg, const ErrorPoint& err) {
  // Exponent H t = (angle/2) [r sz + (1+eps)(cos phase sx + sin phase sy)].
  double half = 0.5 * seg.angle;
  double cz = half * err.delta_ratio;
  double amp = half * (1.0 + err.eps);
  double cx = amp * std::cos(seg.phase);
  double cy = amp * std::sin(seg.phase);
  double norm = std::sqrt(cx * cx + cy * cy + cz * cz);

  cmat2 u = std::cos(norm) * cmat2::Identity();
  if (norm > 0.0) {
    double s = std::sin(norm) / norm;
    u -= Ic * s *
         (cx * pauli(Pauli::X) + cy * pauli(Pauli::Y) + cz * pauli(Pauli::Z));
  }
  return u;
}

cmat2 sequence_propagator(const PulseSequence& seq, const ErrorPoint& err,
                          double phase_offset) {
  if (seq.empty()) throw EmptySequence("sequence_propagator: empty sequence");
  cmat2 u = cmat2::Identity();
  for (const auto& seg : seq)
    u = segment_propagator({seg.angle, seg.phase + phase_offset}, err) * u;
  return u;
}

PulseSequence composite_pi() {
  return {{0.5 * kPi, 0.0},
          {1.12 * kPi, kPi / 2},
          {0.44 * kPi, -kPi / 2},
          {1.12 * kPi, kPi / 2},
          {0.5 * kPi, 0.0}};
}

PulseSequence rect_pi() { return {{kPi, 0.0}}; }

cmat dd_propagator(const DDSequence& dd, const ErrorPoint& err,
                   const cmat& free_h) {
  validate(dd);
  validate(err);
  if (free_h.rows() != free_h.cols())
    throw DimensionMismatch("dd_propagator: free_H not square");
  Eigen::Index dim = free_h.rows();
  if (dim % 2 != 0)
    throw DimensionMismatch("dd_propagator: free_H dimension not even");
  Eigen::Index bath_dim = dim / 2;

  cmat f_tau = expm_dense(free_h, dd.tau);
  cmat f_2tau = f_tau * f_tau;

  std::vector<double> phases = pattern_phases(dd.pattern);
  auto pulse_at = [&](std::size_t pulse_index) {
    cmat2 p = sequence_propagator(dd.pulse, err,
                                  phases[pulse_index % phases.size()]);
    if (bath_dim == 1) return cmat(p);
    cmat joint = cmat::Zero(dim, dim);
    cmat id = cmat::Identity(bath_dim, bath_dim);
    joint.topLeftCorner(bath_dim, bath_dim) = p(0, 0) * id;
    joint.topRightCorner(bath_dim, bath_dim) = p(0, 1) * id;
    joint.bottomLeftCorner(bath_dim, bath_dim) = p(1, 0) * id;
    joint.bottomRightCorner(bath_dim, bath_dim) = p(1, 1) * id;
    return joint;
  };

  cmat u = cmat::Identity(dim, dim);
  std::size_t pulse_index = 0;
  for (int rep = 0; rep < dd.n_pulses / 2; ++rep) {
    cmat unit = f_tau * pulse_at(pulse_index + 1) * f_2tau *
                pulse_at(pulse_index) * f_tau;
    pulse_index += 2;
    u = unit * u;
  }
  return u;
}

SweepResult simulate_rabi(double omega_hz, double t_max, double t1rho,
                          double contrast, int n_points) {
  if (!(omega_hz > 0.0) || !(t_max > 0.0) || !(t1rho > 0.0) ||
      !(contrast > 0.0))
    throw Error("simulate_rabi: parameters must be positive");
  SweepResult out;
  out.columns = {"t_s", "p0"};
  out.rows.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    double t = t_max * static_cast<double>(i) / (n_points - 1);
    double p0 = 1.0 - 0.5 * contrast * (1.0 - std::cos(2.0 * kPi * omega_hz * t)) *
                          std::exp(-t / t1rho);
    out.rows.push_back({t, p0});
  }
  return out;
}

}  // namespace ddsense
