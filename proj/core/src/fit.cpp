#include "ddsense/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ddsense/errors.hpp"

namespace ddsense {

FitResult levenberg_marquardt(const ResidualFn& residual,
                              const Eigen::VectorXd& p0, int n_residuals,
                              int max_iters, double tol, bool must_converge) {
  int np = static_cast<int>(p0.size());
  Eigen::VectorXd p = p0;
  Eigen::VectorXd r(n_residuals), r_try(n_residuals);
  Eigen::MatrixXd jac(n_residuals, np);

  residual(p, r);
  double rss = r.squaredNorm();
  double lambda = 1e-3;

  FitResult out;
  int it = 0;
  bool converged = false;
  for (; it < max_iters; ++it) {
    // Forward-difference Jacobian.
    for (int j = 0; j < np; ++j) {
      double h = 1e-7 * std::max(1.0, std::abs(p(j)));
      Eigen::VectorXd pj = p;
      pj(j) += h;
      residual(pj, r_try);
      jac.col(j) = (r_try - r) / h;
    }
    Eigen::MatrixXd jtj = jac.transpose() * jac;
    Eigen::VectorXd jtr = jac.transpose() * r;

    bool stepped = false;
    for (int attempt = 0; attempt < 12; ++attempt) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
      Eigen::VectorXd delta = damped.ldlt().solve(jtr);
      Eigen::VectorXd p_new = p - delta;
      residual(p_new, r_try);
      double rss_new = r_try.squaredNorm();
      if (std::isfinite(rss_new) && rss_new < rss) {
        double drop = rss - rss_new;
        p = p_new;
        r = r_try;
        rss = rss_new;
        lambda = std::max(lambda / 8.0, 1e-12);
        stepped = true;
        if (drop < tol * (1.0 + rss)) converged = true;
        break;
      }
      lambda *= 8.0;
    }
    if (!stepped) {
      double scale = jac.norm() * r.norm();
      if (rss < 1e-20 || jtr.norm() <= 1e-6 * scale + 1e-300) converged = true;
      break;
    }
    if (converged) break;
  }

  out.params = p;
  out.rss = rss;
  out.iterations = it;
  out.converged = converged || rss < 1e-20;
  if (must_converge && !out.converged)
    throw FitDidNotConverge("levenberg_marquardt: no convergence");
  return out;
}

GaussianDip fit_gaussian_dip(const std::vector<double>& x,
                             const std::vector<double>& y, double center_seed,
                             double width_seed) {
  if (x.size() != y.size() || x.size() < 5)
    throw Error("fit_gaussian_dip: need >= 5 points");
  int n = static_cast<int>(x.size());

  // Fit in window-normalized coordinates so all parameters are O(1).
  double x0 = x.front();
  double span = x.back() - x.front();
  if (!(span > 0.0)) throw Error("fit_gaussian_dip: x must be increasing");

  double ymax = *std::max_element(y.begin(), y.end());
  double ymin = *std::min_element(y.begin(), y.end());
  Eigen::VectorXd p0(4);
  p0 << ymax, ymax - ymin, (center_seed - x0) / span, width_seed / span;

  ResidualFn res = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    double base = p(0), depth = p(1), c = p(2), w = p(3);
    double w2 = std::max(w * w, 1e-30);
    for (int i = 0; i < n; ++i) {
      double dx = (x[static_cast<std::size_t>(i)] - x0) / span - c;
      r(i) = base - depth * std::exp(-0.5 * dx * dx / w2) -
             y[static_cast<std::size_t>(i)];
    }
  };

  FitResult fr = levenberg_marquardt(res, p0, n, 400, 1e-14);
  GaussianDip dip;
  dip.base = fr.params(0);
  dip.depth = fr.params(1);
  dip.center = x0 + fr.params(2) * span;
  dip.width = std::abs(fr.params(3)) * span;
  dip.rss = fr.rss;
  dip.converged = fr.converged;
  return dip;
}

ExpN2Fit fit_exp_n2(const std::vector<double>& n,
                    const std::vector<double>& depth) {
  if (n.size() != depth.size() || n.size() < 3)
    throw Error("fit_exp_n2: need >= 3 points");
  int m = static_cast<int>(n.size());

  double d_front = depth.front();
  double d_back = depth.back();
  double nmax = *std::max_element(n.begin(), n.end());
  double nmax2 = nmax * nmax;
  Eigen::VectorXd p0(3);
  // Scaled exponent mu = lambda * nmax^2 keeps all parameters O(1);
  // depth grows toward saturation, so a < 0 and b is the plateau.
  p0 << d_front - d_back, std::log(10.0), d_back;

  ResidualFn res = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (int i = 0; i < m; ++i) {
      double u = n[static_cast<std::size_t>(i)] / nmax;
      r(i) = p(0) * std::exp(-p(1) * u * u) + p(2) -
             depth[static_cast<std::size_t>(i)];
    }
  };

  FitResult fr = levenberg_marquardt(res, p0, m, 400, 1e-14);
  ExpN2Fit fit;
  fit.a = fr.params(0);
  fit.lambda = fr.params(1) / nmax2;
  fit.b = fr.params(2);
  fit.rss = fr.rss;
  fit.converged = fr.converged;
  Eigen::VectorXd r(m);
  res(fr.params, r);
  fit.residuals.assign(r.data(), r.data() + m);
  return fit;
}

}  // namespace ddsense
