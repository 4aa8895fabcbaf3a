#include "ddsense/evalfn.hpp"

#include <cmath>

namespace ddsense {

namespace {
constexpr double kPi = 3.141592653589793238462643383279;

void check_normalized(const Chi& chi) {
  if (!is_hermitian(chi, 1e-9))
    throw UnnormalizedChannel("chi not Hermitian");
  double diag = chi.diagonal().real().sum();
  if (std::abs(diag - 1.0) > 1e-6)
    throw UnnormalizedChannel("chi diagonal does not sum to 1");
}
}  // namespace

void validate(const ErrorGrid& grid) {
  if (grid.points.empty()) throw Error("ErrorGrid: empty");
  if (grid.points.size() != grid.weights.size())
    throw DimensionMismatch("ErrorGrid: points/weights size mismatch");
  double sum = 0.0;
  for (double w : grid.weights) {
    if (w < 0.0) throw Error("ErrorGrid: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw Error("ErrorGrid: weights do not sum to 1");
}

ErrorGrid uniform_grid(double delta_max, int n_delta, double eps_max,
                       int n_eps) {
  ErrorGrid grid;
  int total = n_delta * n_eps;
  double w = 1.0 / total;
  for (int i = 0; i < n_delta; ++i) {
    double d = n_delta == 1
                   ? 0.0
                   : -delta_max + 2.0 * delta_max * i / (n_delta - 1);
    for (int j = 0; j < n_eps; ++j) {
      double e = n_eps == 1 ? 0.0 : -eps_max + 2.0 * eps_max * j / (n_eps - 1);
      grid.points.push_back({d, e});
      grid.weights.push_back(w);
    }
  }
  // Exact normalization despite rounding.
  double sum = pairwise_sum(grid.weights);
  for (double& wt : grid.weights) wt /= sum;
  return grid;
}

ErrorGrid gaussian_detuning_grid(double sigma, int n_points) {
  ErrorGrid grid;
  std::vector<double> raw(n_points);
  for (int i = 0; i < n_points; ++i) {
    double d = n_points == 1
                   ? 0.0
                   : -3.0 * sigma + 6.0 * sigma * i / (n_points - 1);
    grid.points.push_back({d, 0.0});
    raw[i] = std::exp(-0.5 * d * d / (sigma * sigma));
  }
  double sum = pairwise_sum(raw);
  for (double w : raw) grid.weights.push_back(w / sum);
  return grid;
}

double f_qs(const Chi& chi) {
  check_normalized(chi);
  complexd val = chi(1, 1) + chi(2, 2);
  if (std::abs(val.imag()) > 1e-9)
    throw UnnormalizedChannel("f_qs: non-real diagonal");
  return val.real();
}

double f_qs(const cmat2& u) { return f_qs(unitary_to_chi(u)); }

double f_qc(const Chi& chi, const cmat2& target) {
  check_normalized(chi);
  if (!is_unitary(target)) throw NotUnitaryTarget("f_qc: target not unitary");
  Chi chi_t = unitary_to_chi(target);
  complexd overlap = (chi * chi_t).trace();
  double val = overlap.real() < 0.0 ? 0.0 : overlap.real();
  return std::sqrt(val);
}

double f_qc(const cmat2& u, const cmat2& target) {
  if (!is_unitary(target)) throw NotUnitaryTarget("f_qc: target not unitary");
  return std::abs((u * target.adjoint()).trace()) / 2.0;
}

double rect_pi_f_qs(double r) {
  double q = 1.0 + r * r;
  return (1.0 - std::cos(kPi * std::sqrt(q))) / (2.0 * q);
}

double rect_pi_f_qc(double r) {
  double q = 1.0 + r * r;
  return std::abs(std::sin(kPi * std::sqrt(q) / 2.0)) / std::sqrt(q);
}

double sensitivity_link(double eta_in, double fqs) {
  if (fqs <= 1e-6)
    throw DegenerateOperation(
        "sensitivity_link: f_qs <= 1e-6, sensitivity diverges");
  return eta_in / fqs;
}

SweepResult robustness_profile(const PulseSequence& seq, const ErrorGrid& grid,
                               double* mean_fqs, double* mean_fqc,
                               int threads) {
  validate(grid);
  if (seq.empty()) throw EmptySequence("robustness_profile: empty sequence");

  std::size_t n = grid.points.size();
  SweepResult out;
  out.columns = {"delta_ratio", "eps", "weight", "f_qs", "f_qc"};
  out.rows.assign(n, std::vector<double>(5, 0.0));
  // f_qc is judged against the sequence's own error-free realization, so a
  // profile always starts at 1 at the origin whatever the pulse's axis.
  cmat2 target = sequence_propagator(seq, ErrorPoint{0.0, 0.0});
  parallel_for_indexed(n, threads, [&](std::size_t i) {
    const ErrorPoint& pt = grid.points[i];
    cmat2 u = sequence_propagator(seq, pt);
    out.rows[i] = {pt.delta_ratio, pt.eps, grid.weights[i], f_qs(u),
                   f_qc(u, target)};
  });

  if (mean_fqs) *mean_fqs = weighted_mean(out.column("f_qs"), grid.weights);
  if (mean_fqc) *mean_fqc = weighted_mean(out.column("f_qc"), grid.weights);
  return out;
}

double ensemble_average(const std::function<double(const ErrorPoint&)>& metric,
                        const ErrorGrid& distribution) {
  validate(distribution);
  std::vector<double> vals;
  vals.reserve(distribution.points.size());
  for (const auto& pt : distribution.points) vals.push_back(metric(pt));
  return weighted_mean(vals, distribution.weights);
}

}  // namespace ddsense
