#include "ddsense/tomo.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ddsense/rng.hpp"

namespace ddsense {

namespace {
constexpr complexd Ic{0.0, 1.0};

cmat2 observable_matrix(TomoObservable obs) {
  switch (obs) {
    case TomoObservable::X:
      return pauli(Pauli::X);
    case TomoObservable::Y:
      return pauli(Pauli::Y);
    case TomoObservable::Z:
      return pauli(Pauli::Z);
  }
  return pauli(Pauli::Z);
}
}  // namespace

std::string to_string(TomoInput input) {
  switch (input) {
    case TomoInput::Zero:
      return "0";
    case TomoInput::One:
      return "1";
    case TomoInput::Plus:
      return "plus";
    case TomoInput::MinusI:
      return "minus_i";
  }
  return "?";
}

std::string to_string(TomoObservable obs) {
  switch (obs) {
    case TomoObservable::X:
      return "x";
    case TomoObservable::Y:
      return "y";
    case TomoObservable::Z:
      return "z";
  }
  return "?";
}

cmat2 input_state(TomoInput input) {
  Eigen::Vector2cd psi;
  switch (input) {
    case TomoInput::Zero:
      psi << 1, 0;
      break;
    case TomoInput::One:
      psi << 0, 1;
      break;
    case TomoInput::Plus:
      psi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
      break;
    case TomoInput::MinusI:
      psi << 1.0 / std::sqrt(2.0), -Ic / std::sqrt(2.0);
      break;
  }
  return psi * psi.adjoint();
}

std::vector<TomoRecord> simulate_tomography(const Chi& chi, std::int64_t shots,
                                            std::uint64_t seed) {
  if (!is_hermitian(chi, 1e-9))
    throw UnphysicalChannel("simulate_tomography: chi not Hermitian");
  Eigen::SelfAdjointEigenSolver<cmat4> es(chi);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw UnphysicalChannel("simulate_tomography: chi not PSD");
  if (shots < 0) throw Error("simulate_tomography: negative shots");

  std::vector<TomoRecord> records;
  records.reserve(12);
  std::uint64_t stream = 0;
  for (int s = 0; s < 4; ++s) {
    cmat2 rho_out =
        apply_channel(chi, input_state(static_cast<TomoInput>(s)));
    for (int k = 0; k < 3; ++k) {
      auto obs = static_cast<TomoObservable>(k);
      double exact = (observable_matrix(obs) * rho_out).trace().real();
      double mean = exact;
      if (shots > 0) {
        Rng rng(substream_seed(seed, stream));
        double p_up = std::clamp(0.5 * (1.0 + exact), 0.0, 1.0);
        std::int64_t ups = rng.binomial(shots, p_up);
        mean = 2.0 * static_cast<double>(ups) / static_cast<double>(shots) -
               1.0;
      }
      ++stream;
      records.push_back({static_cast<TomoInput>(s), obs, mean, shots});
    }
  }
  return records;
}

Chi linear_inversion(const std::vector<TomoRecord>& records) {
  if (records.size() != 12)
    throw IncompleteRecordSet("linear_inversion: expected 12 records");
  std::array<std::array<bool, 3>, 4> seen{};
  std::array<std::array<double, 3>, 4> means{};
  for (const auto& rec : records) {
    int s = static_cast<int>(rec.input);
    int k = static_cast<int>(rec.observable);
    if (seen[s][k])
      throw DuplicateRecord("linear_inversion: duplicate (input, observable)");
    seen[s][k] = true;
    means[s][k] = rec.mean;
  }
  for (const auto& row : seen)
    for (bool got : row)
      if (!got)
        throw IncompleteRecordSet(
            "linear_inversion: missing (input, observable) pair");

  // Output states reconstructed from the three Pauli means.
  std::array<cmat2, 4> rho_out;
  for (int s = 0; s < 4; ++s) {
    rho_out[s] = 0.5 * (cmat2::Identity() + means[s][0] * pauli(Pauli::X) +
                        means[s][1] * pauli(Pauli::Y) +
                        means[s][2] * pauli(Pauli::Z));
  }

  // sum_ij chi_ij A_i rho_s A_j^dag = rho_out[s]: 16 complex equations in the
  // 16 chi entries.
  Eigen::MatrixXcd sys(16, 16);
  Eigen::VectorXcd rhs(16);
  for (int s = 0; s < 4; ++s) {
    cmat2 rho_in = input_state(static_cast<TomoInput>(s));
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        int eq = 4 * s + 2 * a + b;
        rhs(eq) = rho_out[s](a, b);
        for (int i = 0; i < 4; ++i) {
          cmat2 ai = pauli(static_cast<Pauli>(i));
          for (int j = 0; j < 4; ++j) {
            cmat2 aj = pauli(static_cast<Pauli>(j));
            cmat2 term = ai * rho_in * aj.adjoint();
            sys(eq, 4 * i + j) = term(a, b);
          }
        }
      }
    }
  }
  Eigen::VectorXcd x = sys.colPivHouseholderQr().solve(rhs);

  Chi chi;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) chi(i, j) = x(4 * i + j);
  return 0.5 * (chi + Chi(chi.adjoint()));
}

Chi mle_project(const Chi& chi_raw) {
  if (!is_hermitian(chi_raw, 1e-9))
    throw NonHermitianInput("mle_project: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<cmat4> es(chi_raw);
  Eigen::Vector4d vals = es.eigenvalues().cwiseMax(0.0);
  double total = vals.sum();
  if (total <= 0.0) throw ZeroTrace("mle_project: all eigenvalues clipped");
  Chi chi = es.eigenvectors() * (vals / total).asDiagonal().toDenseMatrix().cast<complexd>() *
            es.eigenvectors().adjoint();
  return 0.5 * (chi + Chi(chi.adjoint()));
}

}  // namespace ddsense
