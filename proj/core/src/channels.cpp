#include "chanlearn/channels.hpp"

#include <cmath>
#include <numeric>

#include "chanlearn/error.hpp"

namespace chanlearn {

InnovationKind parse_innovation_kind(const std::string& s) {
  if (s == "gmd" || s == "gaussian") return InnovationKind::kGaussian;
  if (s == "lmd" || s == "laplace") return InnovationKind::kLaplace;
  fail(ErrorKind::kConfig, "unknown innovation distribution '" + s + "' (expected gmd|lmd)");
}

std::string to_string(InnovationKind kind) {
  return kind == InnovationKind::kGaussian ? "gmd" : "lmd";
}

void MixtureDistribution::validate() const {
  require(!weights.empty(), ErrorKind::kInvalidParameter, "mixture needs at least one component");
  require(weights.size() == means.size() && weights.size() == scales.size(),
          ErrorKind::kInvalidParameter, "mixture weights/means/scales differ in length");
  double total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    require(weights[k] >= 0.0, ErrorKind::kInvalidParameter, "mixture weight is negative");
    require(scales[k] > 0.0 && std::isfinite(scales[k]), ErrorKind::kInvalidParameter,
            "mixture scale must be positive");
    require(std::isfinite(means[k]), ErrorKind::kInvalidParameter, "mixture mean is not finite");
    total += weights[k];
  }
  require(std::abs(total - 1.0) <= 1e-12, ErrorKind::kInvalidParameter,
          "mixture weights do not sum to one");
}

MixtureDistribution make_mixture(InnovationKind kind, std::size_t components, double rho,
                                 Rng& rng) {
  require(components >= 1, ErrorKind::kInvalidParameter, "mixture needs K >= 1");
  require(rho >= 0.0 && std::isfinite(rho), ErrorKind::kInvalidParameter, "rho must be >= 0");
  MixtureDistribution dist;
  dist.kind = kind;
  const Vector w = rng.symmetric_dirichlet(components, 1.0);
  dist.weights.assign(w.data(), w.data() + w.size());
  // Renormalize in long double so the sum is one to the last bit we can manage.
  const long double total = std::accumulate(dist.weights.begin(), dist.weights.end(), 0.0L);
  for (double& x : dist.weights) x = static_cast<double>(x / total);
  dist.means.resize(components);
  for (double& m : dist.means) m = rng.uniform(0.0, rho);
  dist.scales.assign(components, 1.0);
  return dist;
}

MixtureDistribution gaussian_innovation(double stddev) {
  require(stddev > 0.0, ErrorKind::kInvalidParameter, "innovation stddev must be positive");
  return MixtureDistribution{InnovationKind::kGaussian, {1.0}, {0.0}, {stddev}};
}

double sample_mixture(const MixtureDistribution& dist, Rng& rng) {
  std::size_t k = 0;
  if (dist.components() > 1) {
    const Eigen::Map<const Vector> w(dist.weights.data(),
                                     static_cast<Eigen::Index>(dist.weights.size()));
    k = rng.categorical(w);
  }
  const double base = dist.kind == InnovationKind::kGaussian ? rng.normal() : rng.laplace();
  return dist.means[k] + dist.scales[k] * base;
}

MixingMode parse_mixing_mode(const std::string& s) {
  if (s == "geometric") return MixingMode::kGeometric;
  if (s == "constant") return MixingMode::kConstant;
  fail(ErrorKind::kConfig, "unknown mu mode '" + s + "' (expected geometric|constant)");
}

std::string to_string(MixingMode mode) {
  return mode == MixingMode::kGeometric ? "geometric" : "constant";
}

double MixingSchedule::at(std::uint64_t t) const {
  if (mode == MixingMode::kConstant) return mu;
  return std::pow(mu, static_cast<double>(t));
}

void MixingSchedule::validate() const {
  require(mu >= 0.0 && mu <= 1.0, ErrorKind::kInvalidParameter, "mu must lie in [0, 1]");
}

Matrix sample_innovation_matrix(const MixtureDistribution& dist, Eigen::Index rows,
                                Eigen::Index cols, Rng& rng) {
  Matrix m(rows, cols);
  // Column-major fill; fixed order keeps streams reproducible.
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = sample_mixture(dist, rng);
  return m;
}

Vector sample_innovation_vector(const MixtureDistribution& dist, Eigen::Index dim, Rng& rng) {
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = sample_mixture(dist, rng);
  return v;
}

FadingChannelState make_markov_fading(std::size_t dim, MixingSchedule schedule,
                                      MixtureDistribution innovation, double sigma_w,
                                      Rng& rng) {
  require(dim >= 1, ErrorKind::kInvalidParameter, "channel dimension must be >= 1");
  require(sigma_w >= 0.0, ErrorKind::kInvalidParameter, "sigma_w must be >= 0");
  schedule.validate();
  innovation.validate();
  FadingChannelState s;
  s.t = 1;
  s.gain = sample_innovation_matrix(gaussian_innovation(1.0), static_cast<Eigen::Index>(dim),
                                    static_cast<Eigen::Index>(dim), rng);
  s.schedule = schedule;
  s.innovation = std::move(innovation);
  s.sigma_w = sigma_w;
  return s;
}

FadingChannelState make_rayleigh_fading(std::size_t dim, double sigma_w, Rng& rng) {
  require(dim >= 1, ErrorKind::kInvalidParameter, "channel dimension must be >= 1");
  require(sigma_w >= 0.0, ErrorKind::kInvalidParameter, "sigma_w must be >= 0");
  FadingChannelState s;
  s.t = 1;
  s.schedule = MixingSchedule{MixingMode::kConstant, 1.0};
  s.innovation = gaussian_innovation(1.0 / std::sqrt(static_cast<double>(dim)));
  s.gain = sample_innovation_matrix(s.innovation, static_cast<Eigen::Index>(dim),
                                    static_cast<Eigen::Index>(dim), rng);
  s.sigma_w = sigma_w;
  return s;
}

NoiseChannelState make_markov_noise(std::size_t dim, MixingSchedule schedule,
                                    MixtureDistribution innovation, Rng& rng) {
  require(dim >= 1, ErrorKind::kInvalidParameter, "channel dimension must be >= 1");
  schedule.validate();
  innovation.validate();
  NoiseChannelState s;
  s.t = 1;
  s.noise = sample_innovation_vector(innovation, static_cast<Eigen::Index>(dim), rng);
  s.schedule = schedule;
  s.innovation = std::move(innovation);
  return s;
}

NoiseChannelState make_awgn_noise(std::size_t dim, double stddev, Rng& rng) {
  return make_markov_noise(dim, MixingSchedule{MixingMode::kConstant, 1.0},
                           gaussian_innovation(stddev), rng);
}

FadingChannelState fading_step(FadingChannelState state, Rng& rng) {
  const double mu = state.schedule.at(state.t);
  // Exact endpoints: mu = 0 freezes the gain, mu = 1 replaces it.
  if (mu != 0.0) {
    Matrix e = sample_innovation_matrix(state.innovation, state.gain.rows(), state.gain.cols(), rng);
    if (mu == 1.0)
      state.gain = std::move(e);
    else
      state.gain = std::sqrt(1.0 - mu) * state.gain + std::sqrt(mu) * e;
  }
  ++state.t;
  return state;
}

NoiseChannelState noise_step(NoiseChannelState state, Rng& rng) {
  const double mu = state.schedule.at(state.t);
  if (mu != 0.0) {
    Vector e = sample_innovation_vector(state.innovation, state.noise.size(), rng);
    if (mu == 1.0)
      state.noise = std::move(e);
    else
      state.noise = std::sqrt(1.0 - mu) * state.noise + std::sqrt(mu) * e;
  }
  ++state.t;
  return state;
}

Vector transmit_fading(const FadingChannelState& state, const Vector& x, Rng& rng) {
  require(x.size() == state.gain.cols(), ErrorKind::kDimensionMismatch,
          "codeword dimension does not match the channel gain");
  Vector y = state.gain * x;
  if (state.sigma_w > 0.0)
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) += state.sigma_w * rng.normal();
  return y;
}

Vector transmit_additive(const NoiseChannelState& state, const Vector& x) {
  require(x.size() == state.noise.size(), ErrorKind::kDimensionMismatch,
          "codeword dimension does not match the channel noise");
  return x + state.noise;
}

Matrix transmit_fading_batch(const FadingChannelState& state, const Matrix& inputs, Rng& rng) {
  require(inputs.cols() == state.gain.cols(), ErrorKind::kDimensionMismatch,
          "codeword dimension does not match the channel gain");
  Matrix out = inputs * state.gain.transpose();
  if (state.sigma_w > 0.0)
    for (Eigen::Index j = 0; j < out.rows(); ++j)
      for (Eigen::Index i = 0; i < out.cols(); ++i) out(j, i) += state.sigma_w * rng.normal();
  return out;
}

Matrix transmit_additive_batch(const NoiseChannelState& state, const Matrix& inputs) {
  require(inputs.cols() == state.noise.size(), ErrorKind::kDimensionMismatch,
          "codeword dimension does not match the channel noise");
  return inputs.rowwise() + state.noise.transpose();
}

double sigma_w_from_snr(double snr_db, double gamma_x, std::size_t dim) {
  require(dim >= 1 && gamma_x > 0.0, ErrorKind::kInvalidParameter, "invalid SNR inputs");
  const double ratio = std::pow(10.0, snr_db / 10.0);
  return gamma_x / std::sqrt(static_cast<double>(dim) * ratio);
}

}  // namespace chanlearn
