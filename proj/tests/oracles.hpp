#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

// Independent reference implementations used only by the tests. Everything
// here is computed by a different algorithm than the library uses: matrix
// exponentials by Taylor series with scaling and squaring instead of
// axis-angle or eigendecomposition, fidelities straight from trace overlaps
// of the reference propagators.
namespace oracle {

using complexd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat expm(const Mat& a) {
  double norm = a.cwiseAbs().maxCoeff() * static_cast<double>(a.rows());
  int squarings = 0;
  while (norm > 0.5) {
    norm /= 2.0;
    ++squarings;
  }
  Mat scaled = a / std::pow(2.0, squarings);
  Mat term = Mat::Identity(a.rows(), a.cols());
  Mat sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

inline Mat expm_iht(const Mat& h, double t) {
  return expm(Mat(complexd(0.0, -1.0) * t * h));
}

inline Mat sigma(int axis) {
  Mat s(2, 2);
  switch (axis) {
    case 0:
      s << 1, 0, 0, 1;
      break;
    case 1:
      s << 0, 1, 1, 0;
      break;
    case 2:
      s << 0, complexd(0, -1), complexd(0, 1), 0;
      break;
    default:
      s << 1, 0, 0, -1;
      break;
  }
  return s;
}

// One drive segment: exp(-i (angle/2) [r sz + (1+eps)(cos(phase) sx +
// sin(phase) sy)]), built with the series exponential.
inline Mat segment(double angle, double phase, double delta_ratio,
                   double eps) {
  Mat gen = delta_ratio * sigma(3) +
            (1.0 + eps) * (std::cos(phase) * sigma(1) +
                           std::sin(phase) * sigma(2));
  return expm(Mat(complexd(0.0, -1.0) * (angle / 2.0) * gen));
}

struct Segment {
  double angle;
  double phase;
};

inline Mat sequence(const std::vector<Segment>& segs, double delta_ratio,
                    double eps, double phase_offset = 0.0) {
  Mat u = Mat::Identity(2, 2);
  for (const auto& seg : segs)
    u = segment(seg.angle, seg.phase + phase_offset, delta_ratio, eps) * u;
  return u;
}

inline std::vector<Segment> rect_pi() { return {{M_PI, 0.0}}; }

inline std::vector<Segment> composite_pi() {
  return {{0.5 * M_PI, 0.0},
          {1.12 * M_PI, 0.5 * M_PI},
          {0.44 * M_PI, -0.5 * M_PI},
          {1.12 * M_PI, 0.5 * M_PI},
          {0.5 * M_PI, 0.0}};
}

// chi_xx + chi_yy of a unitary channel from the trace overlaps.
inline double fqs(const Mat& u) {
  complexd cx = (sigma(1) * u).trace() / 2.0;
  complexd cy = (sigma(2) * u).trace() / 2.0;
  return std::norm(cx) + std::norm(cy);
}

inline double fqc(const Mat& u, const Mat& target) {
  return std::abs((u * target.adjoint()).trace()) / 2.0;
}

// Closed forms for the rectangular pi pulse at eps = 0.
inline double rect_fqs_closed(double r) {
  double s = 1.0 + r * r;
  return (1.0 - std::cos(M_PI * std::sqrt(s))) / (2.0 * s);
}

inline double rect_fqc_closed(double r) {
  double s = 1.0 + r * r;
  return std::abs(std::sin(M_PI * std::sqrt(s) / 2.0)) / std::sqrt(s);
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Least-squares slope of y against x.
inline double lsq_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= static_cast<double>(x.size());
  ym /= static_cast<double>(x.size());
  double cov = 0.0, var = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (x[i] - xm) * (y[i] - ym);
    var += (x[i] - xm) * (x[i] - xm);
  }
  return cov / var;
}

}  // namespace oracle
