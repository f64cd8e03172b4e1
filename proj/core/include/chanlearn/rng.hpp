#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "chanlearn/numerics.hpp"

namespace chanlearn {

/// Deterministic random source. A run's stream is derived from
/// (base_seed, stream_index) through a SplitMix64 finalizer, so runs with
/// different indices get unrelated engine states no matter the order in
/// which they execute.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static Rng derive(std::uint64_t base_seed, std::uint64_t stream);

  std::uint64_t seed() const noexcept { return seed_; }

  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  std::size_t uniform_index(std::size_t n);
  double normal();
  double laplace();  // location 0, scale 1
  double gamma(double shape);
  Vector dirichlet(std::span<const double> alpha);
  Vector symmetric_dirichlet(std::size_t k, double alpha = 1.0);

  /// Inverse-CDF draw from a probability vector. Zero-weight entries are never
  /// returned.
  std::size_t categorical(const Vector& probs);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace chanlearn
