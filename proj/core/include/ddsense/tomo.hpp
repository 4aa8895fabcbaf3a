#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddsense/qcore.hpp"

namespace ddsense {

enum class TomoInput { Zero = 0, One = 1, Plus = 2, MinusI = 3 };
enum class TomoObservable { X = 0, Y = 1, Z = 2 };

struct TomoRecord {
  TomoInput input;
  TomoObservable observable;
  double mean = 0.0;   // [-1, 1]
  std::int64_t shots;  // 0 = exact mode
};

std::string to_string(TomoInput input);
std::string to_string(TomoObservable obs);

// Density matrix of a preparation state.
cmat2 input_state(TomoInput input);

// The 12 records (4 inputs x 3 observables). shots = 0 gives exact
// expectations; shots > 0 draws binomial finite-statistics means.
std::vector<TomoRecord> simulate_tomography(const Chi& chi, std::int64_t shots,
                                            std::uint64_t seed);

// Solves the channel equations for chi from a complete record set;
// Hermitian by construction, possibly unphysical (negative eigenvalues).
Chi linear_inversion(const std::vector<TomoRecord>& records);

// Projects onto the physical cone: eigenvalues clipped at 0, diagonal
// rescaled to sum 1. Idempotent on physical chi.
Chi mle_project(const Chi& chi_raw);

}  // namespace ddsense
