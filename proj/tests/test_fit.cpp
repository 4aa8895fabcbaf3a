#include <doctest.h>

#include <cmath>
#include <vector>

#include "ddsense/errors.hpp"
#include "ddsense/fit.hpp"
#include "ddsense/rng.hpp"

using namespace ddsense;

TEST_CASE("levenberg_marquardt solves a linear least squares problem") {
  std::vector<double> x, y;
  for (int i = 0; i < 20; ++i) {
    x.push_back(0.1 * i);
    y.push_back(3.0 - 1.7 * x.back());
  }
  ResidualFn residual = [&](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (int i = 0; i < 20; ++i) r(i) = p(0) + p(1) * x[i] - y[i];
  };
  Eigen::VectorXd p0(2);
  p0 << 0.0, 0.0;
  FitResult fr = levenberg_marquardt(residual, p0, 20);
  CHECK(fr.converged);
  CHECK(fr.params(0) == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(fr.params(1) == doctest::Approx(-1.7).epsilon(1e-8));
  CHECK(fr.rss < 1e-16);
}

TEST_CASE("gaussian dip fit recovers synthetic parameters") {
  double base = 0.97, depth = 0.55, center = 6.1e-7, width = 2.8e-8;
  std::vector<double> x, y;
  for (int i = 0; i < 41; ++i) {
    double xi = 5.0e-7 + 0.5e-8 * i;
    x.push_back(xi);
    double dx = xi - center;
    y.push_back(base - depth * std::exp(-dx * dx / (2.0 * width * width)));
  }
  GaussianDip dip = fit_gaussian_dip(x, y, 6.0e-7, 2.0e-8);
  CHECK(dip.converged);
  CHECK(dip.base == doctest::Approx(base).epsilon(1e-6));
  CHECK(dip.depth == doctest::Approx(depth).epsilon(1e-6));
  CHECK(dip.center == doctest::Approx(center).epsilon(1e-8));
  CHECK(dip.width == doctest::Approx(width).epsilon(1e-5));
}

TEST_CASE("gaussian dip fit tolerates noise at realistic scales") {
  Rng rng(55);
  double base = 1.0, depth = 0.6, center = 1.8e-6, width = 2.8e-8;
  std::vector<double> x, y;
  for (int i = 0; i < 41; ++i) {
    double xi = 1.7e-6 + 0.5e-8 * i;
    x.push_back(xi);
    double dx = xi - center;
    y.push_back(base - depth * std::exp(-dx * dx / (2.0 * width * width)) +
                0.002 * rng.normal());
  }
  GaussianDip dip = fit_gaussian_dip(x, y, 1.79e-6, 2.0e-8);
  CHECK(dip.converged);
  CHECK(dip.center == doctest::Approx(center).epsilon(2e-3));
  CHECK(dip.depth == doctest::Approx(depth).epsilon(0.05));
}

TEST_CASE("exp n-squared fit recovers synthetic parameters") {
  double a = -2.4, lambda = 1.1e-3, b = 2.4;
  std::vector<double> n, d;
  for (int nv : {2, 4, 8, 16, 24, 32}) {
    n.push_back(nv);
    d.push_back(a * std::exp(-lambda * nv * nv) + b);
  }
  ExpN2Fit fit = fit_exp_n2(n, d);
  CHECK(fit.converged);
  CHECK(fit.a == doctest::Approx(a).epsilon(1e-5));
  CHECK(fit.lambda == doctest::Approx(lambda).epsilon(1e-5));
  CHECK(fit.b == doctest::Approx(b).epsilon(1e-5));
  REQUIRE(fit.residuals.size() == n.size());
  for (double r : fit.residuals) CHECK(std::abs(r) < 1e-9);
}

TEST_CASE("must_converge turns failure into an exception") {
  ResidualFn runaway = [](const Eigen::VectorXd& p, Eigen::VectorXd& r) {
    for (int i = 0; i < 3; ++i) r(i) = std::exp(-p(0));
  };
  Eigen::VectorXd p0(1);
  p0 << 0.0;
  CHECK_THROWS_AS(levenberg_marquardt(runaway, p0, 3, 3, 1e-300, true),
                  FitDidNotConverge);
  FitResult fr = levenberg_marquardt(runaway, p0, 3, 3, 1e-300, false);
  CHECK_FALSE(fr.converged);
}
