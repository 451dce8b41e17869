#include "symlab/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace symlab {

void RunningStats::push(double x) {
  ++n;
  const double d = x - mean;
  mean += d / n;
  m2 += d * (x - mean);
}

void RunningStats::merge(const RunningStats& o) {
  if (o.n == 0) return;
  if (n == 0) {
    *this = o;
    return;
  }
  const long total = n + o.n;
  const double d = o.mean - mean;
  mean += d * o.n / total;
  m2 += o.m2 + d * d * static_cast<double>(n) * o.n / total;
  n = total;
}

Estimate RunningStats::estimate() const {
  return {mean, n > 1 ? std::sqrt(variance() / n) : 0.0};
}

namespace {

RunningStats run_chunk(long c, long trials, const Rng& rng, const std::function<double(Rng&)>& sample) {
  Rng r = rng.split(static_cast<std::uint64_t>(c));
  RunningStats s;
  const long end = std::min(trials, (c + 1) * kChunk);
  for (long t = c * kChunk; t < end; ++t) s.push(sample(r));
  return s;
}

}  // namespace

Estimate mc_mean(long trials, const Rng& rng, const std::function<double(Rng&)>& sample) {
  const long chunks = (trials + kChunk - 1) / kChunk;
  std::vector<RunningStats> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1)
  for (long c = 0; c < chunks; ++c) parts[static_cast<std::size_t>(c)] = run_chunk(c, trials, rng, sample);
  RunningStats all;
  for (const auto& p : parts) all.merge(p);
  return all.estimate();
}

Estimate mc_mean_serial(long trials, const Rng& rng, const std::function<double(Rng&)>& sample) {
  const long chunks = (trials + kChunk - 1) / kChunk;
  RunningStats all;
  for (long c = 0; c < chunks; ++c) all.merge(run_chunk(c, trials, rng, sample));
  return all.estimate();
}

std::vector<double> support_profile_values(const Body& b, const SphereGrid& grid) {
  const Mat V = vertex_matrix(b);
  const Mat& X = grid.nodes();
  std::vector<double> out(grid.size());
  const auto n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = (V.transpose() * X.col(j)).maxCoeff();
  return out;
}

std::vector<double> support_profile_values_serial(const Body& b, const SphereGrid& grid) {
  const Mat V = vertex_matrix(b);
  const Mat& X = grid.nodes();
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    out[j] = (V.transpose() * X.col(static_cast<Eigen::Index>(j))).maxCoeff();
  return out;
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace symlab
