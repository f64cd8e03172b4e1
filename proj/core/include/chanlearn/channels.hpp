#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chanlearn/numerics.hpp"
#include "chanlearn/rng.hpp"

namespace chanlearn {

enum class InnovationKind { kGaussian, kLaplace };

InnovationKind parse_innovation_kind(const std::string& s);  // "gmd" | "lmd"
std::string to_string(InnovationKind kind);

/// Finite mixture of Gaussian or Laplace components with scalar means and
/// scales (standard deviation for Gaussian, b for Laplace).
struct MixtureDistribution {
  InnovationKind kind = InnovationKind::kGaussian;
  std::vector<double> weights;
  std::vector<double> means;
  std::vector<double> scales;

  std::size_t components() const { return weights.size(); }
  void validate() const;
};

/// Weights ~ Dirichlet(1,...,1), means ~ U(0, rho), unit scales.
MixtureDistribution make_mixture(InnovationKind kind, std::size_t components,
                                 double rho, Rng& rng);

/// Zero-mean single-component Gaussian with the given standard deviation.
MixtureDistribution gaussian_innovation(double stddev);

double sample_mixture(const MixtureDistribution& dist, Rng& rng);

enum class MixingMode { kGeometric, kConstant };

MixingMode parse_mixing_mode(const std::string& s);
std::string to_string(MixingMode mode);

/// Mixing weight of the innovation at step t: mu^t (geometric) or mu.
struct MixingSchedule {
  MixingMode mode = MixingMode::kGeometric;
  double mu = 0.96;

  double at(std::uint64_t t) const;
  void validate() const;
};

/// H_{t+1} = sqrt(1 - mu_t) H_t + sqrt(mu_t) E_t, observed through
/// Y = H X + W with W ~ N(0, sigma_w^2 I) drawn per transmitted codeword.
struct FadingChannelState {
  std::uint64_t t = 1;
  Matrix gain;
  MixingSchedule schedule;
  MixtureDistribution innovation;
  double sigma_w = 0.0;
};

/// Z_{t+1} = sqrt(1 - mu_t) Z_t + sqrt(mu_t) eps_t, observed through
/// Y = X + Z with one Z per round.
struct NoiseChannelState {
  std::uint64_t t = 1;
  Vector noise;
  MixingSchedule schedule;
  MixtureDistribution innovation;
};

Matrix sample_innovation_matrix(const MixtureDistribution& dist, Eigen::Index rows,
                                Eigen::Index cols, Rng& rng);
Vector sample_innovation_vector(const MixtureDistribution& dist, Eigen::Index dim,
                                Rng& rng);

/// Markov fading channel with H_1 entries i.i.d. N(0, 1).
FadingChannelState make_markov_fading(std::size_t dim, MixingSchedule schedule,
                                      MixtureDistribution innovation, double sigma_w,
                                      Rng& rng);

/// Block Rayleigh fading: H redrawn every round with entries N(0, 1/d). This is
/// the Markov recursion with constant mu = 1 and a Gaussian innovation.
FadingChannelState make_rayleigh_fading(std::size_t dim, double sigma_w, Rng& rng);

/// Markov additive-noise channel with Z_1 drawn from the innovation.
NoiseChannelState make_markov_noise(std::size_t dim, MixingSchedule schedule,
                                    MixtureDistribution innovation, Rng& rng);

/// AWGN: Z redrawn every round from N(0, stddev^2 I).
NoiseChannelState make_awgn_noise(std::size_t dim, double stddev, Rng& rng);

FadingChannelState fading_step(FadingChannelState state, Rng& rng);
NoiseChannelState noise_step(NoiseChannelState state, Rng& rng);

Vector transmit_fading(const FadingChannelState& state, const Vector& x, Rng& rng);
Vector transmit_additive(const NoiseChannelState& state, const Vector& x);

// Batch forms: row j of `inputs` is one codeword, row j of the result is its
// channel output. All rows see the same gain / noise realization.
Matrix transmit_fading_batch(const FadingChannelState& state, const Matrix& inputs, Rng& rng);
Matrix transmit_additive_batch(const NoiseChannelState& state, const Matrix& inputs);

/// Noise std per dimension such that 10 log10(gamma_x^2 / (d sigma_w^2)) equals
/// snr_db.
double sigma_w_from_snr(double snr_db, double gamma_x, std::size_t dim);

}  // namespace chanlearn
