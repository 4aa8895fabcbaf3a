#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace ddsense {

// Residual function: fills r(x) given parameters p; r_i = model(x_i) - y_i.
using ResidualFn =
    std::function<void(const Eigen::VectorXd& p, Eigen::VectorXd& r)>;

struct FitResult {
  Eigen::VectorXd params;
  double rss = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Small dense Levenberg-Marquardt with forward-difference Jacobian.
// Throws FitDidNotConverge only when `must_converge` is set; otherwise the
// caller inspects `converged`.
FitResult levenberg_marquardt(const ResidualFn& residual,
                              const Eigen::VectorXd& p0, int n_residuals,
                              int max_iters = 200, double tol = 1e-12,
                              bool must_converge = false);

struct GaussianDip {
  double base = 0.0;
  double depth = 0.0;
  double center = 0.0;
  double width = 0.0;
  double rss = 0.0;
  bool converged = false;
};

// Fits y(x) ~ base - depth exp(-(x - center)^2 / (2 width^2)) around one dip.
GaussianDip fit_gaussian_dip(const std::vector<double>& x,
                             const std::vector<double>& y, double center_seed,
                             double width_seed);

struct ExpN2Fit {
  double a = 0.0;
  double lambda = 0.0;
  double b = 0.0;
  double rss = 0.0;
  bool converged = false;
  std::vector<double> residuals;
};

// Fits depth(N) ~ a exp(-lambda N^2) + b.
ExpN2Fit fit_exp_n2(const std::vector<double>& n,
                    const std::vector<double>& depth);

}  // namespace ddsense
