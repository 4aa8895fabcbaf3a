#include <doctest.h>

#include <cmath>

#include "ddsense/evalfn.hpp"
#include "ddsense/rng.hpp"
#include "ddsense/tomo.hpp"
#include "oracles.hpp"

using namespace ddsense;

TEST_CASE("input states are the four standard preparations") {
  for (TomoInput in :
       {TomoInput::Zero, TomoInput::One, TomoInput::Plus, TomoInput::MinusI}) {
    cmat2 rho = input_state(in);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-14);
    CHECK(is_hermitian(rho));
    CHECK((rho * rho - rho).cwiseAbs().maxCoeff() < 1e-14);
  }
  CHECK(input_state(TomoInput::Zero)(0, 0).real() == doctest::Approx(1.0));
  CHECK(input_state(TomoInput::One)(1, 1).real() == doctest::Approx(1.0));
  CHECK(input_state(TomoInput::Plus)(0, 1).real() == doctest::Approx(0.5));
  CHECK(input_state(TomoInput::MinusI)(0, 1).imag() ==
        doctest::Approx(0.5));
}

TEST_CASE("record labels are stable strings") {
  CHECK(to_string(TomoInput::Zero) == "0");
  CHECK(to_string(TomoInput::One) == "1");
  CHECK(to_string(TomoInput::Plus) == "plus");
  CHECK(to_string(TomoInput::MinusI) == "minus_i");
  CHECK(to_string(TomoObservable::X) == "x");
  CHECK(to_string(TomoObservable::Y) == "y");
  CHECK(to_string(TomoObservable::Z) == "z");
}

TEST_CASE("exact tomography of sigma-x gives textbook expectations") {
  Chi chi = unitary_to_chi(cmat2(pauli(Pauli::X)));
  auto records = simulate_tomography(chi, 0, 0);
  REQUIRE(records.size() == 12);
  auto mean_of = [&](TomoInput in, TomoObservable obs) {
    for (const auto& rec : records)
      if (rec.input == in && rec.observable == obs) return rec.mean;
    FAIL("record not found");
    return 0.0;
  };
  CHECK(mean_of(TomoInput::Zero, TomoObservable::Z) == doctest::Approx(-1.0));
  CHECK(mean_of(TomoInput::One, TomoObservable::Z) == doctest::Approx(1.0));
  CHECK(mean_of(TomoInput::Plus, TomoObservable::X) == doctest::Approx(1.0));
  CHECK(mean_of(TomoInput::MinusI, TomoObservable::Y) ==
        doctest::Approx(1.0));
  CHECK(mean_of(TomoInput::Zero, TomoObservable::X) == doctest::Approx(0.0));
}

TEST_CASE("linear inversion round trips exact records") {
  Rng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    double a = rng.uniform(0.0, 6.28);
    double b = rng.uniform(-1.5, 1.5);
    cmat2 u = expm_2x2(
        cmat2(std::cos(b) * pauli(Pauli::X) + std::sin(b) * pauli(Pauli::Z)),
        a);
    Chi chi = unitary_to_chi(u);
    Chi rec = linear_inversion(simulate_tomography(chi, 0, 0));
    CHECK((rec - chi).norm() < 1e-10);
  }
}

TEST_CASE("incomplete or duplicated record sets are rejected") {
  Chi chi = unitary_to_chi(cmat2(pauli(Pauli::X)));
  auto records = simulate_tomography(chi, 0, 0);
  auto missing = records;
  missing.pop_back();
  CHECK_THROWS_AS(linear_inversion(missing), IncompleteRecordSet);
  auto duplicated = records;
  duplicated[3] = duplicated[2];
  CHECK_THROWS_AS(linear_inversion(duplicated), DuplicateRecord);
}

TEST_CASE("finite-shot tomography is seeded and bounded") {
  Chi chi = unitary_to_chi(cmat2(pauli(Pauli::X)));
  auto a = simulate_tomography(chi, 500, 11);
  auto b = simulate_tomography(chi, 500, 11);
  auto c = simulate_tomography(chi, 500, 12);
  bool identical = true, any_differ = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    identical = identical && a[i].mean == b[i].mean;
    any_differ = any_differ || a[i].mean != c[i].mean;
    CHECK(a[i].mean >= -1.0);
    CHECK(a[i].mean <= 1.0);
    CHECK(a[i].shots == 500);
  }
  CHECK(identical);
  CHECK(any_differ);
}

TEST_CASE("mle projection restores physicality and is idempotent") {
  Chi chi = unitary_to_chi(cmat2(pauli(Pauli::Y)));
  Chi same = mle_project(chi);
  CHECK((same - chi).norm() < 1e-10);

  Chi dented = chi;
  dented(0, 0) += 0.05;
  dented(3, 3) -= 0.05;
  Chi fixed = mle_project(dented);
  Eigen::SelfAdjointEigenSolver<cmat4> es(fixed);
  CHECK(es.eigenvalues().minCoeff() >= -1e-12);
  CHECK(fixed.diagonal().real().sum() == doctest::Approx(1.0).epsilon(1e-10));

  Chi twice = mle_project(fixed);
  CHECK((twice - fixed).norm() < 1e-10);
}

TEST_CASE("noisy tomography of a rotated pulse stays close after projection") {
  Chi chi = unitary_to_chi(
      expm_2x2(cmat2(0.6 * pauli(Pauli::X) + 0.2 * pauli(Pauli::Z)), 1.3));
  auto records = simulate_tomography(chi, 20000, 3);
  Chi rec = mle_project(linear_inversion(records));
  CHECK((rec - chi).norm() < 0.05);
}
