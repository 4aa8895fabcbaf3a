#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace ddsense {

// Tabular result of a parameter sweep: named columns, one row per point.
struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

int resolve_threads(int requested);

// Runs fn(i) for i in [0, n) on `threads` workers over static index blocks.
// Each call writes only its own preallocated slot, so the result is
// independent of the thread count; any cross-point reduction must happen
// sequentially afterwards.
void parallel_for_indexed(std::size_t n, int threads,
                          const std::function<void(std::size_t)>& fn);

// Pairwise summation; fixed association order regardless of thread count.
double pairwise_sum(const std::vector<double>& values);

// Weighted mean via pairwise sums of products.
double weighted_mean(const std::vector<double>& values,
                     const std::vector<double>& weights);

}  // namespace ddsense
