#include "ddsense/sweep.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

#include "ddsense/errors.hpp"

namespace ddsense {

std::size_t SweepResult::column_index(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end())
    throw Error("SweepResult: no column named '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> SweepResult::column(const std::string& name) const {
  std::size_t idx = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.at(idx));
  return out;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for_indexed(std::size_t n, int threads,
                          const std::function<void(std::size_t)>& fn) {
  int nt = resolve_threads(threads);
  if (n == 0) return;
  if (nt <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(nt), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

double pairwise_sum(const std::vector<double>& values) {
  struct Impl {
    static double run(const double* data, std::size_t n) {
      if (n == 0) return 0.0;
      if (n <= 8) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += data[i];
        return acc;
      }
      std::size_t half = n / 2;
      return run(data, half) + run(data + half, n - half);
    }
  };
  return Impl::run(values.data(), values.size());
}

double weighted_mean(const std::vector<double>& values,
                     const std::vector<double>& weights) {
  if (values.size() != weights.size())
    throw DimensionMismatch("weighted_mean: size mismatch");
  std::vector<double> products(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    products[i] = values[i] * weights[i];
  double wsum = pairwise_sum(weights);
  if (wsum == 0.0) throw Error("weighted_mean: zero total weight");
  return pairwise_sum(products) / wsum;
}

}  // namespace ddsense
