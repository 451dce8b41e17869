#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace symlab {

/// Counter-based generator: output k of a stream is a fixed mix of
/// (key, k), so any stream can be split into independent children without
/// shared state. Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Child stream `index`; the parent's position is not consumed.
  Rng split(std::uint64_t index) const;

  result_type operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

std::uint64_t mix64(std::uint64_t x);

}  // namespace symlab
