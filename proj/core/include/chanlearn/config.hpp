#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "chanlearn/channels.hpp"
#include "chanlearn/decoder_learning.hpp"

#include <json.hpp>

namespace chanlearn {

enum class Task { kDecoder, kCodebook };
enum class Algorithm { kOomd, kOgd, kLs, kExp3, kRandom };
enum class ChannelKind { kMarkov, kRayleigh, kAwgn };

std::string to_string(Task v);
std::string to_string(Algorithm v);
std::string to_string(ChannelKind v);
Task parse_task(const std::string& s);
Algorithm parse_algorithm(const std::string& s);
ChannelKind parse_channel(const std::string& s);

/// Everything needed to reproduce one experiment. Defaults follow the
/// simulation study: d = 8, M = 64, N = 100, K = 3, mu = 0.96 geometric,
/// 24 dB, T = 1000, seeds 0..9.
struct ExperimentConfig {
  Task task = Task::kDecoder;
  Algorithm algorithm = Algorithm::kOomd;
  std::size_t rounds = 1000;  // T
  std::size_t dim = 8;        // d
  std::size_t codewords = 64; // M
  std::size_t codebooks = 100; // N
  MixingSchedule schedule{};
  InnovationKind innovation = InnovationKind::kGaussian;
  std::size_t components = 3;  // K
  double rho = 0.1;
  double snr_db = 24.0;
  ChannelKind channel = ChannelKind::kMarkov;
  double gamma_x = 1.0;
  double radius = 10.0;  // D

  // Decoder learner.
  GradientMode gradient = GradientMode::kAllActive;
  double margin = 1.0;  // r
  double ridge = 1e-8;

  // Log-barrier learner.
  double eta = 1.0 / 162.0;
  bool doubling = false;

  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::filesystem::path output;
  std::size_t jobs = 0;  // 0 = hardware concurrency

  void validate() const;
};

/// Strict parse: unknown keys and missing required keys (task, algo, T) raise
/// ErrorKind::kConfig naming the key. Keys match the CLI flag names with
/// dashes replaced by underscores.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);
nlohmann::json load_json_file(const std::filesystem::path& path);

/// Shallow merge; keys in `overrides` replace keys in `base`.
nlohmann::json merge_overrides(nlohmann::json base, const nlohmann::json& overrides);

nlohmann::json to_json(const ExperimentConfig& cfg);

}  // namespace chanlearn
