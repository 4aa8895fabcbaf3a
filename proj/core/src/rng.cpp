#include "ddsense/rng.hpp"

#include <cmath>

namespace ddsense {

namespace {
std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
constexpr double kTwoPi = 6.283185307179586476925286766559;
}  // namespace

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  double u1 = uniform();
  double u2 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

std::int64_t Rng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  if (mean < 64.0) {
    double limit = std::exp(-mean);
    double prod = 1.0;
    std::int64_t k = -1;
    do {
      ++k;
      prod *= uniform();
    } while (prod > limit);
    return k;
  }
  double draw = std::round(mean + std::sqrt(mean) * normal());
  return draw < 0.0 ? 0 : static_cast<std::int64_t>(draw);
}

std::int64_t Rng::binomial(std::int64_t n, double p) {
  if (n <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  if (n < 100000) {
    std::int64_t k = 0;
    for (std::int64_t i = 0; i < n; ++i)
      if (uniform() < p) ++k;
    return k;
  }
  double mean = static_cast<double>(n) * p;
  double sd = std::sqrt(mean * (1.0 - p));
  double draw = std::round(mean + sd * normal());
  if (draw < 0.0) draw = 0.0;
  if (draw > static_cast<double>(n)) draw = static_cast<double>(n);
  return static_cast<std::int64_t>(draw);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (index + 1));
  splitmix64(x);
  return splitmix64(x);
}

}  // namespace ddsense
