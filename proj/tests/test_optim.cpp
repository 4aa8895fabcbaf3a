#include <doctest.h>

#include <cmath>

#include "ddsense/control.hpp"
#include "ddsense/evalfn.hpp"
#include "ddsense/optim.hpp"

using namespace ddsense;

namespace {
constexpr double kPi = 3.14159265358979323846;

double mean_fqs_over(const PulseSequence& seq, const ErrorGrid& grid) {
  double m = 0.0;
  for (std::size_t i = 0; i < grid.points.size(); ++i)
    m += grid.weights[i] * f_qs(sequence_propagator(seq, grid.points[i]));
  return m;
}
}  // namespace

TEST_CASE("objective is mean quality minus the duration penalty") {
  ErrorGrid zero = uniform_grid(0.0, 1, 0.0, 1);
  double base = objective(rect_pi(), zero, 0.0);
  CHECK(base == doctest::Approx(1.0).epsilon(1e-12));
  double penalized = objective(rect_pi(), zero, 0.1);
  CHECK(penalized == doctest::Approx(1.0 - 0.1).epsilon(1e-12));
  double comp = objective(composite_pi(), zero, 0.1);
  CHECK(comp == doctest::Approx(mean_fqs_over(composite_pi(), zero) -
                                0.1 * 3.68)
                    .epsilon(1e-9));
}

TEST_CASE("random init respects the advertised ranges and the seed") {
  PulseSequence a = random_init(6, 9);
  PulseSequence b = random_init(6, 9);
  PulseSequence c = random_init(6, 10);
  REQUIRE(a.size() == 6);
  bool identical = true, differ = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].angle > 0.2 * kPi);
    CHECK(a[i].angle < 1.5 * kPi);
    CHECK(a[i].phase >= -kPi);
    CHECK(a[i].phase < kPi);
    identical = identical && a[i].angle == b[i].angle;
    differ = differ || a[i].angle != c[i].angle;
  }
  CHECK(identical);
  CHECK(differ);
}

TEST_CASE("gradient ascent history is monotone non-decreasing") {
  for (std::uint64_t seed : {1, 2, 3}) {
    OptimConfig cfg = default_optim_config();
    cfg.max_iters = 60;
    cfg.seed = seed;
    cfg.threads = 2;
    OptimResult result = grad_ascent(cfg);
    REQUIRE(!result.history.empty());
    for (std::size_t i = 1; i < result.history.size(); ++i)
      CHECK(result.history[i] >= result.history[i - 1]);
    CHECK(result.objective ==
          doctest::Approx(result.history.back()).epsilon(1e-12));
  }
}

TEST_CASE("optimized pulse dominates rect on the default training grid") {
  OptimConfig cfg = default_optim_config();
  OptimResult result = grad_ascent(cfg);
  CHECK_FALSE(result.no_improvement);
  int violations = 0;
  for (std::size_t i = 0; i < cfg.grid.points.size(); ++i) {
    if (cfg.grid.weights[i] <= 0.0) continue;
    double opt = f_qs(sequence_propagator(result.sequence,
                                          cfg.grid.points[i]));
    double rect = f_qs(sequence_propagator(rect_pi(), cfg.grid.points[i]));
    if (opt < rect) ++violations;
  }
  CHECK(violations == 0);
  CHECK(mean_fqs_over(result.sequence, cfg.grid) >
        mean_fqs_over(rect_pi(), cfg.grid));
}

TEST_CASE("no improving step is reported when pinned at the angle floor") {
  OptimConfig cfg;
  cfg.grid = uniform_grid(0.0, 1, 0.0, 1);
  cfg.duration_penalty = 1.0;
  cfg.max_iters = 50;
  PulseSequence pinned = {{1e-9, 0.0}};
  OptimResult result = grad_ascent(cfg, pinned);
  CHECK(result.no_improvement);
  REQUIRE(result.sequence.size() == 1);
  CHECK(result.sequence[0].angle == doctest::Approx(1e-9));
}

TEST_CASE("finite-difference gradient matches Richardson extrapolation") {
  OptimConfig cfg = default_optim_config();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    PulseSequence seq = random_init(5, seed);
    auto fd = objective_gradient(seq, cfg.grid, 0.02);
    auto rich = objective_gradient_richardson(seq, cfg.grid, 0.02);
    REQUIRE(fd.size() == rich.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < fd.size(); ++i) {
      num += (fd[i] - rich[i]) * (fd[i] - rich[i]);
      den += rich[i] * rich[i];
    }
    CHECK(std::sqrt(num / den) < 1e-5);
  }
}

TEST_CASE("invalid optimizer configs are rejected") {
  OptimConfig cfg = default_optim_config();
  cfg.max_iters = 0;
  CHECK_THROWS_AS(grad_ascent(cfg), Error);
  cfg = default_optim_config();
  cfg.tol = 0.0;
  CHECK_THROWS_AS(grad_ascent(cfg), Error);
  cfg = default_optim_config();
  cfg.grid.points.clear();
  cfg.grid.weights.clear();
  CHECK_THROWS_AS(grad_ascent(cfg), Error);
}
