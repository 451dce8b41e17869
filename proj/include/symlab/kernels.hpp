#pragma once

#include <exception>
#include <functional>
#include <optional>
#include <vector>

#include "symlab/body.hpp"
#include "symlab/metrics.hpp"
#include "symlab/rng.hpp"
#include "symlab/sphere_grid.hpp"

namespace symlab {

/// Welford accumulator; merge() combines shards exactly as a single pass
/// over the concatenated samples would up to rounding.
struct RunningStats {
  long n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void push(double x);
  void merge(const RunningStats& o);
  double variance() const { return n > 1 ? m2 / (n - 1) : 0.0; }
  Estimate estimate() const;
};

/// Trials are cut into fixed chunks; chunk c draws from rng.split(c) and
/// chunks are merged in order, so both versions return identical bits.
inline constexpr long kChunk = 1024;
Estimate mc_mean(long trials, const Rng& rng, const std::function<double(Rng&)>& sample);
Estimate mc_mean_serial(long trials, const Rng& rng, const std::function<double(Rng&)>& sample);

/// Support function of the body at every grid node.
std::vector<double> support_profile_values(const Body& b, const SphereGrid& grid);
std::vector<double> support_profile_values_serial(const Body& b, const SphereGrid& grid);

/// Evaluates fn(i) for i < n across threads; results in index order.
template <class T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn);
template <class T>
std::vector<T> parallel_map_serial(int n, const std::function<T(int)>& fn) {
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(fn(i));
  return out;
}

int worker_count();

template <class T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn) {
  std::vector<std::optional<T>> slots(static_cast<std::size_t>(n));
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    try {
      slots[static_cast<std::size_t>(i)].emplace(fn(i));
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  std::vector<T> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace symlab
