#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chanlearn/config.hpp"

namespace chanlearn {

struct RoundRecord {
  std::size_t t = 0;
  double loss = 0.0;
  double running_avg = 0.0;
  /// Algorithm-specific columns in a fixed order, e.g. eta, arm.
  std::vector<std::pair<std::string, double>> extras;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct SeedRun {
  std::uint64_t seed = 0;
  std::vector<RoundRecord> records;
};

/// Prefix means (1/t) sum_{s<=t} losses[s].
std::vector<double> running_average(std::span<const double> losses);

// Each run draws from independent streams derived from its seed: stream 0 for
// codebooks and mixtures, 1 for the channel, 2 for the learner's sampling.
// Channel realizations therefore match across algorithms for the same seed.
inline constexpr std::uint64_t kSetupStream = 0;
inline constexpr std::uint64_t kChannelStream = 1;
inline constexpr std::uint64_t kPolicyStream = 2;

std::vector<RoundRecord> run_decoder_experiment(const ExperimentConfig& cfg,
                                                std::uint64_t seed);
std::vector<RoundRecord> run_codebook_experiment(const ExperimentConfig& cfg,
                                                 std::uint64_t seed);

/// The all-active gradient is justified only when the codebook separation d*
/// is at least 1/(2 D L), with L from output_norm_bound(gamma_x, sqrt(d),
/// 3 sigma_w sqrt(d)). Returns a message when the seed's codebook violates it.
std::optional<std::string> separation_warning(const ExperimentConfig& cfg, std::uint64_t seed);

/// Runs every seed (concurrently when cfg.jobs allows) and returns the runs in
/// seed order.
std::vector<SeedRun> run_experiment(const ExperimentConfig& cfg);

struct SeedSummary {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
};

/// Mean and standard error of the final running average across runs.
SeedSummary summarize_final(std::span<const SeedRun> runs);

}  // namespace chanlearn
