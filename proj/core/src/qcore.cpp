#include "ddsense/qcore.hpp"

#include <cmath>

namespace ddsense {

namespace {
constexpr complexd Ic{0.0, 1.0};
}

cmat2 pauli(Pauli index) {
  cmat2 m;
  switch (index) {
    case Pauli::I:
      m << 1, 0, 0, 1;
      break;
    case Pauli::X:
      m << 0, 1, 1, 0;
      break;
    case Pauli::Y:
      m << 0, -Ic, Ic, 0;
      break;
    case Pauli::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

double max_abs(const cmat& a) { return a.cwiseAbs().maxCoeff(); }

bool is_hermitian(const cmat& h, double tol) {
  return max_abs(h - h.adjoint()) < tol;
}

bool is_unitary(const cmat& u, double tol) {
  cmat id = cmat::Identity(u.rows(), u.cols());
  return max_abs(u.adjoint() * u - id) < tol;
}

cmat2 expm_2x2(const cmat2& h, double t) {
  if (h.rows() != 2 || h.cols() != 2)
    throw DimensionMismatch("expm_2x2 requires a 2x2 matrix");
  if (!is_hermitian(h)) throw NonHermitianInput("expm_2x2: input not Hermitian");

  // H = c0 I + c.sigma; exp(-iHt) = e^{-i c0 t} (cos(|c|t) I - i sin(|c|t) n.sigma)
  double c0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
  double cx = h(0, 1).real();
  double cy = -h(0, 1).imag();
  double cz = 0.5 * (h(0, 0).real() - h(1, 1).real());
  double norm = std::sqrt(cx * cx + cy * cy + cz * cz);

  cmat2 u = cmat2::Identity();
  double ang = norm * t;
  u *= std::cos(ang);
  if (norm > 0.0) {
    double s = std::sin(ang) / norm;
    u -= Ic * s * (cx * pauli(Pauli::X) + cy * pauli(Pauli::Y) + cz * pauli(Pauli::Z));
  }
  return std::exp(-Ic * c0 * t) * u;
}

cmat expm_dense(const cmat& h, double t) {
  if (h.rows() != h.cols()) throw DimensionMismatch("expm_dense: matrix not square");
  if (h.rows() > 64) throw DimensionTooLarge("expm_dense: dimension exceeds 64");
  if (!is_hermitian(h)) throw NonHermitianInput("expm_dense: input not Hermitian");

  Eigen::SelfAdjointEigenSolver<cmat> es(h);
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  Eigen::VectorXcd phases(vals.size());
  for (Eigen::Index k = 0; k < vals.size(); ++k)
    phases(k) = std::exp(-Ic * vals(k) * t);
  return vecs * phases.asDiagonal() * vecs.adjoint();
}

Chi unitary_to_chi(const cmat2& u) {
  if (!is_unitary(u)) throw NotUnitary("unitary_to_chi: input not unitary");
  Eigen::Vector4cd c;
  for (int i = 0; i < 4; ++i)
    c(i) = (pauli(static_cast<Pauli>(i)).adjoint() * u).trace() / 2.0;
  return c * c.adjoint();
}

cmat2 apply_channel(const Chi& chi, const cmat2& rho) {
  if (!is_hermitian(rho, 1e-9))
    throw InvalidDensityMatrix("apply_channel: rho not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-9 || std::abs(rho.trace().imag()) > 1e-9)
    throw InvalidDensityMatrix("apply_channel: Tr(rho) != 1");
  Eigen::SelfAdjointEigenSolver<cmat2> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw InvalidDensityMatrix("apply_channel: rho not positive semidefinite");

  cmat2 out = cmat2::Zero();
  for (int i = 0; i < 4; ++i) {
    cmat2 ai = pauli(static_cast<Pauli>(i));
    for (int j = 0; j < 4; ++j) {
      cmat2 aj = pauli(static_cast<Pauli>(j));
      out += chi(i, j) * ai * rho * aj.adjoint();
    }
  }
  return out;
}

}  // namespace ddsense
