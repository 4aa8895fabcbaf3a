#pragma once

#include <cstdint>

namespace ddsense {

// Deterministic generator with a platform-independent output sequence.
// std::mt19937 + std::*_distribution would not give byte-identical results
// across standard library implementations, so all sampling is explicit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform();

  // Uniform in [lo, hi).
  double uniform(double lo, double hi);

  // Standard normal via Box-Muller (two uniforms per call, no cached spare).
  double normal();

  // Poisson sample; product method below mean 64, rounded normal above.
  std::int64_t poisson(double mean);

  // Binomial sample; Bernoulli summation below 1e5 trials, normal beyond.
  std::int64_t binomial(std::int64_t n, double p);

 private:
  std::uint64_t state_;
};

// Stream splitting: a decorrelated seed for sweep point `index`, so results
// never depend on which thread handles which point.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace ddsense
