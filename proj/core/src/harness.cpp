#include "chanlearn/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <thread>

#include "chanlearn/bandit_learning.hpp"
#include "chanlearn/channels.hpp"
#include "chanlearn/codebooks.hpp"
#include "chanlearn/decoder_learning.hpp"
#include "chanlearn/error.hpp"

namespace chanlearn {

std::vector<double> running_average(std::span<const double> losses) {
  require(!losses.empty(), ErrorKind::kInvalidParameter, "running_average needs at least one loss");
  std::vector<double> out(losses.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < losses.size(); ++i) {
    sum += losses[i];
    out[i] = sum / static_cast<double>(i + 1);
  }
  return out;
}

namespace {

std::unique_ptr<DecoderPolicy> make_decoder_policy(const ExperimentConfig& cfg) {
  SurrogateParams params{cfg.gradient, cfg.margin, cfg.radius};
  switch (cfg.algorithm) {
    case Algorithm::kOomd:
      return std::make_unique<OptimisticDecoderLearner>(cfg.dim, params);
    case Algorithm::kOgd:
      return std::make_unique<GradientDescentDecoderLearner>(cfg.dim, params);
    case Algorithm::kLs:
      return std::make_unique<LeastSquaresDecoder>(cfg.dim, cfg.ridge, params);
    default:
      fail(ErrorKind::kConfig, "algorithm '" + to_string(cfg.algorithm) +
                                   "' is not valid for the decoder task");
  }
}

std::unique_ptr<ArmPolicy> make_arm_policy(const ExperimentConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::kOomd:
      return std::make_unique<OptimisticLogBarrierBandit>(
          cfg.codebooks, LogBarrierOptions{cfg.eta, cfg.doubling});
    case Algorithm::kExp3:
      return std::make_unique<Exp3Bandit>(cfg.codebooks, cfg.rounds);
    case Algorithm::kRandom:
      return std::make_unique<RandomSelector>(cfg.codebooks);
    default:
      fail(ErrorKind::kConfig, "algorithm '" + to_string(cfg.algorithm) +
                                   "' is not valid for the codebook task");
  }
}

}  // namespace

std::vector<RoundRecord> run_decoder_experiment(const ExperimentConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  require(cfg.task == Task::kDecoder, ErrorKind::kConfig, "config is not a decoder task");

  Rng setup = Rng::derive(seed, kSetupStream);
  Rng chan = Rng::derive(seed, kChannelStream);

  const MixtureDistribution mixture =
      make_mixture(cfg.innovation, cfg.components, cfg.rho, setup);
  const Codebook cb = make_constant_modulus_codebook(cfg.codewords, cfg.dim, cfg.gamma_x, setup);
  const double sigma_w = sigma_w_from_snr(cfg.snr_db, cfg.gamma_x, cfg.dim);

  FadingChannelState state = cfg.channel == ChannelKind::kRayleigh
                                 ? make_rayleigh_fading(cfg.dim, sigma_w, chan)
                                 : make_markov_fading(cfg.dim, cfg.schedule, mixture, sigma_w, chan);
  auto policy = make_decoder_policy(cfg);

  std::vector<RoundRecord> records;
  records.reserve(cfg.rounds);
  double sum = 0.0;
  for (std::size_t t = 1; t <= cfg.rounds; ++t) {
    if (t > 1) state = fading_step(std::move(state), chan);
    const Matrix outputs = transmit_fading_batch(state, cb.codewords(), chan);
    const DecoderRound round = policy->play_round(cb, outputs);
    sum += round.symbol_error;
    records.push_back({t, round.symbol_error, sum / static_cast<double>(t),
                       {{"eta", round.eta},
                        {"deviation", round.deviation},
                        {"surrogate", round.surrogate}}});
  }
  return records;
}

std::vector<RoundRecord> run_codebook_experiment(const ExperimentConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  require(cfg.task == Task::kCodebook, ErrorKind::kConfig, "config is not a codebook task");

  Rng setup = Rng::derive(seed, kSetupStream);
  Rng chan = Rng::derive(seed, kChannelStream);
  Rng pick = Rng::derive(seed, kPolicyStream);

  const MixtureDistribution mixture =
      make_mixture(cfg.innovation, cfg.components, cfg.rho, setup);
  const SuperCodebook books =
      generate_super_codebook(cfg.codebooks, cfg.codewords, cfg.dim, cfg.gamma_x, setup);

  NoiseChannelState state = cfg.channel == ChannelKind::kAwgn
                                ? make_awgn_noise(cfg.dim, 1.0, chan)
                                : make_markov_noise(cfg.dim, cfg.schedule, mixture, chan);
  auto policy = make_arm_policy(cfg);
  std::vector<std::string> weight_names;
  for (std::size_t i = 0; i < cfg.codebooks; ++i) weight_names.push_back("w" + std::to_string(i));

  std::vector<RoundRecord> records;
  records.reserve(cfg.rounds);
  double sum = 0.0;
  for (std::size_t t = 1; t <= cfg.rounds; ++t) {
    if (t > 1) state = noise_step(std::move(state), chan);
    const double eta = policy->eta();
    const std::size_t arm = policy->choose_arm(pick);
    const Codebook& cb = books[arm];
    const double loss = ser_codebook(cb, transmit_additive_batch(state, cb.codewords()));
    policy->update_after_loss(arm, loss);
    sum += loss;
    RoundRecord rec{t, loss, sum / static_cast<double>(t),
                    {{"arm", static_cast<double>(arm)}, {"eta", eta}}};
    const Vector w = policy->distribution();
    for (Eigen::Index i = 0; i < w.size(); ++i) rec.extras.emplace_back(weight_names[i], w(i));
    records.push_back(std::move(rec));
  }
  return records;
}

std::optional<std::string> separation_warning(const ExperimentConfig& cfg, std::uint64_t seed) {
  if (cfg.task != Task::kDecoder || cfg.gradient != GradientMode::kAllActive) return std::nullopt;
  Rng setup = Rng::derive(seed, kSetupStream);
  (void)make_mixture(cfg.innovation, cfg.components, cfg.rho, setup);
  const Codebook cb = make_constant_modulus_codebook(cfg.codewords, cfg.dim, cfg.gamma_x, setup);
  const double d = static_cast<double>(cfg.dim);
  const double sigma_w = sigma_w_from_snr(cfg.snr_db, cfg.gamma_x, cfg.dim);
  const double bound = output_norm_bound(cfg.gamma_x, std::sqrt(d), 3.0 * sigma_w * std::sqrt(d));
  const double d_star = max_pairwise_distance(cb);
  const double needed = 1.0 / (2.0 * cfg.radius * bound);
  if (d_star >= needed) return std::nullopt;
  return "seed " + std::to_string(seed) + ": codebook separation " + std::to_string(d_star) +
         " is below 1/(2 D L) = " + std::to_string(needed) +
         "; the all-active gradient is not backed by the regret bound";
}

std::vector<SeedRun> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.seeds.size();
  std::vector<SeedRun> runs(n);
  std::vector<std::exception_ptr> errors(n);

  const auto work = [&](std::size_t i) {
    try {
      const std::uint64_t seed = cfg.seeds[i];
      runs[i].seed = seed;
      runs[i].records = cfg.task == Task::kDecoder ? run_decoder_experiment(cfg, seed)
                                                   : run_codebook_experiment(cfg, seed);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  std::size_t jobs = cfg.jobs != 0 ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, n);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < jobs; ++k) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) work(i);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return runs;
}

SeedSummary summarize_final(std::span<const SeedRun> runs) {
  require(!runs.empty(), ErrorKind::kInvalidParameter, "no runs to summarize");
  SeedSummary s;
  s.count = runs.size();
  std::vector<double> finals;
  for (const auto& r : runs) {
    require(!r.records.empty(), ErrorKind::kInvalidParameter, "run has no records");
    finals.push_back(r.records.back().running_avg);
  }
  for (double v : finals) s.mean += v;
  s.mean /= static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : finals) ss += (v - s.mean) * (v - s.mean);
    s.std_error = std::sqrt(ss / static_cast<double>(s.count - 1) / static_cast<double>(s.count));
  }
  return s;
}

}  // namespace chanlearn
