#pragma once

#include <Eigen/Dense>
#include <complex>

#include "ddsense/errors.hpp"

namespace ddsense {

using complexd = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cmat2 = Eigen::Matrix2cd;
using cmat4 = Eigen::Matrix4cd;

// Process matrix in the operator basis {I, sigma_x, sigma_y, sigma_z};
// trace-preserving channels are normalized so the diagonal sums to 1.
using Chi = cmat4;

enum class Pauli { I = 0, X = 1, Y = 2, Z = 3 };

// 2x2 Pauli matrix (or identity) for the given basis index.
cmat2 pauli(Pauli index);

// max|A_ij| over all entries.
double max_abs(const cmat& a);

bool is_hermitian(const cmat& h, double tol = 1e-10);
bool is_unitary(const cmat& u, double tol = 1e-10);

// exp(-i H t) for 2x2 Hermitian H via the axis-angle closed form.
cmat2 expm_2x2(const cmat2& h, double t);

// exp(-i H t) for Hermitian H up to 64x64 via eigendecomposition.
cmat expm_dense(const cmat& h, double t);

// chi_ij = c_i c_j* with c_i = Tr(A_i^dag U) / 2.
Chi unitary_to_chi(const cmat2& u);

// E(rho) = sum_ij chi_ij A_i rho A_j^dag.
cmat2 apply_channel(const Chi& chi, const cmat2& rho);

}  // namespace ddsense
