#include "chanlearn/rng.hpp"

#include <cmath>
#include <numeric>

#include "chanlearn/error.hpp"

namespace chanlearn {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  engine_.seed(seq);
}

Rng Rng::derive(std::uint64_t base_seed, std::uint64_t stream) {
  return Rng(splitmix64(splitmix64(base_seed) ^ splitmix64(~stream)));
}

double Rng::uniform() {
  // 53 random bits -> [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::uniform_index(std::size_t n) {
  require(n > 0, ErrorKind::kInvalidParameter, "uniform_index needs n > 0");
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(engine_);
}

double Rng::normal() { return normal_(engine_); }

double Rng::laplace() {
  // Inverse CDF on u in (-1/2, 1/2).
  double u = uniform() - 0.5;
  while (u == -0.5) u = uniform() - 0.5;
  return -std::copysign(1.0, u) * std::log1p(-2.0 * std::abs(u));
}

double Rng::gamma(double shape) {
  require(shape > 0.0, ErrorKind::kInvalidParameter, "gamma shape must be positive");
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

Vector Rng::dirichlet(std::span<const double> alpha) {
  require(!alpha.empty(), ErrorKind::kInvalidParameter, "dirichlet needs at least one component");
  Vector out(static_cast<Eigen::Index>(alpha.size()));
  for (std::size_t i = 0; i < alpha.size(); ++i) out(static_cast<Eigen::Index>(i)) = gamma(alpha[i]);
  const double total = out.sum();
  // All-zero draws only happen through underflow at tiny shapes.
  if (!(total > 0.0)) {
    out.setZero();
    out(static_cast<Eigen::Index>(uniform_index(alpha.size()))) = 1.0;
    return out;
  }
  return out / total;
}

Vector Rng::symmetric_dirichlet(std::size_t k, double alpha) {
  std::vector<double> a(k, alpha);
  return dirichlet(a);
}

std::size_t Rng::categorical(const Vector& probs) {
  require(probs.size() > 0, ErrorKind::kInvalidParameter, "categorical needs a nonempty vector");
  const double total = probs.sum();
  require(total > 0.0 && std::isfinite(total), ErrorKind::kInvalidParameter,
          "categorical weights must have a positive finite sum");
  const double u = uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (probs(i) <= 0.0) continue;
    acc += probs(i);
    last_positive = static_cast<std::size_t>(i);
    if (u < acc) return last_positive;
  }
  return last_positive;
}

}  // namespace chanlearn
