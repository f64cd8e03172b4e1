#include <gtest/gtest.h>

#include <functional>
#include <sstream>

#include "chanlearn/bandit_learning.hpp"
#include "chanlearn/channels.hpp"
#include "chanlearn/codebooks.hpp"
#include "chanlearn/config.hpp"
#include "chanlearn/csv.hpp"
#include "chanlearn/error.hpp"
#include "chanlearn/harness.hpp"

using namespace chanlearn;
using nlohmann::json;

namespace {

ExperimentConfig decoder_cfg(std::size_t rounds, Algorithm algo = Algorithm::kOomd) {
  ExperimentConfig cfg;
  cfg.task = Task::kDecoder;
  cfg.algorithm = algo;
  cfg.rounds = rounds;
  cfg.codewords = 16;
  cfg.seeds = {0};
  cfg.jobs = 1;
  return cfg;
}

ExperimentConfig codebook_cfg(std::size_t rounds, Algorithm algo = Algorithm::kOomd) {
  ExperimentConfig cfg = decoder_cfg(rounds);
  cfg.task = Task::kCodebook;
  cfg.algorithm = algo;
  cfg.codebooks = 10;
  cfg.rho = 0.01;
  return cfg;
}

std::string csv_text(const std::vector<RoundRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::kInvalidState;
}

}  // namespace

TEST(RunningAverage, Examples) {
  EXPECT_EQ(running_average(std::vector<double>{1.0}), std::vector<double>{1.0});
  EXPECT_EQ(running_average(std::vector<double>{0.0, 1.0}), (std::vector<double>{0.0, 0.5}));
  EXPECT_EQ(running_average(std::vector<double>{0.25, 0.75, 0.5}),
            (std::vector<double>{0.25, 0.5, 0.5}));
  EXPECT_THROW(running_average(std::vector<double>{}), Error);
}

TEST(ParseConfig, MinimalDocumentGetsDefaults) {
  const auto cfg = parse_config_text(R"({"task": "decoder", "algo": "ogd", "T": 50})");
  EXPECT_EQ(cfg.task, Task::kDecoder);
  EXPECT_EQ(cfg.algorithm, Algorithm::kOgd);
  EXPECT_EQ(cfg.rounds, 50u);
  EXPECT_EQ(cfg.dim, 8u);
  EXPECT_EQ(cfg.snr_db, 24.0);
  EXPECT_EQ(cfg.schedule.mode, MixingMode::kGeometric);
  EXPECT_EQ(cfg.schedule.mu, 0.96);
  EXPECT_EQ(cfg.seeds.size(), 10u);
}

TEST(ParseConfig, MissingRequiredKeyIsNamed) {
  try {
    parse_config_text(R"({"task": "decoder", "algo": "oomd"})");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
    EXPECT_NE(std::string(e.what()).find("'T'"), std::string::npos);
  }
}

TEST(ParseConfig, Strictness) {
  EXPECT_EQ(kind_of([] { parse_config_text(R"({"task": "decoder", "algo": "oomd", "T": 5, "colour": 1})"); }),
            ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_config_text(R"({"task": "decoder", "algo": "exp3", "T": 5})"); }),
            ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_config_text(R"({"task": "codebook", "algo": "ls", "T": 5})"); }),
            ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_config_text(R"({"task": "decoder", "algo": "oomd", "T": 0})"); }),
            ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_config_text(R"({"task": "decoder", "algo": "oomd", "T": "many"})"); }),
            ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_config_text("{not json"); }), ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_config_text(R"({"task": "codebook", "algo": "oomd", "T": 5, "eta": 0.5})"); }),
            ErrorKind::kConfig);
}

TEST(ParseConfig, OverridesTakePrecedence) {
  const json file = json::parse(R"({"task": "codebook", "algo": "oomd", "T": 10, "rho": 0.1})");
  const auto cfg = parse_config(merge_overrides(file, json{{"rho", 0.3}}));
  EXPECT_EQ(cfg.rho, 0.3);
}

TEST(ParseConfig, JsonRoundTrip) {
  auto cfg = codebook_cfg(123, Algorithm::kExp3);
  cfg.schedule = {MixingMode::kConstant, 0.05};
  cfg.innovation = InnovationKind::kLaplace;
  cfg.seeds = {4, 5};
  const auto back = parse_config(to_json(cfg));
  EXPECT_EQ(to_json(back), to_json(cfg));
}

TEST(Csv, RoundTripIsExact) {
  const auto runs = run_experiment(decoder_cfg(40));
  const auto flat = flatten_runs(runs);
  std::istringstream in(csv_text(flat));
  EXPECT_EQ(read_csv(in), flat);
}

TEST(Csv, HeaderLayout) {
  const auto records = run_decoder_experiment(decoder_cfg(3), 0);
  const std::string text = csv_text(records);
  EXPECT_EQ(text.substr(0, text.find('\n')), "t,loss,running_avg,eta,deviation,surrogate");
  const auto cb = run_codebook_experiment(codebook_cfg(3), 0);
  const std::string cb_text = csv_text(cb);
  EXPECT_EQ(cb_text.substr(0, cb_text.find('\n')), "t,loss,running_avg,arm,eta,w0,w1,w2,w3,w4,w5,w6,w7,w8,w9");
}

TEST(Csv, RejectsMalformed) {
  std::istringstream bad_header("a,b,c\n1,2,3\n");
  EXPECT_THROW(read_csv(bad_header), Error);
  std::istringstream bad_cell("t,loss,running_avg\n1,x,0\n");
  EXPECT_THROW(read_csv(bad_cell), Error);
}

TEST(DecoderExperiment, FirstRoundUsesZeroKernel) {
  const auto records = run_decoder_experiment(decoder_cfg(1), 0);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].t, 1u);
  // Zero kernel on a constant-modulus codebook: all distances tie, no errors.
  EXPECT_EQ(records[0].loss, 0.0);
  EXPECT_EQ(records[0].extras[0].first, "eta");
  EXPECT_EQ(records[0].extras[0].second, 10.0);
}

TEST(DecoderExperiment, LeastSquaresExactOnFrozenNoiselessChannel) {
  auto cfg = decoder_cfg(20, Algorithm::kLs);
  cfg.schedule = {MixingMode::kConstant, 0.0};
  cfg.snr_db = 400.0;
  cfg.ridge = 0.0;
  cfg.radius = 1e6;
  for (const auto& r : run_decoder_experiment(cfg, 3)) EXPECT_EQ(r.loss, 0.0);
}

TEST(DecoderExperiment, RunningAverageMatchesLosses) {
  for (auto algo : {Algorithm::kOomd, Algorithm::kOgd, Algorithm::kLs}) {
    const auto records = run_decoder_experiment(decoder_cfg(200, algo), 1);
    std::vector<double> losses;
    for (const auto& r : records) losses.push_back(r.loss);
    const auto avg = running_average(losses);
    for (std::size_t i = 0; i < records.size(); ++i) EXPECT_NEAR(records[i].running_avg, avg[i], 1e-12);
  }
}

TEST(CodebookExperiment, SingleArm) {
  std::vector<std::vector<RoundRecord>> all;
  for (auto algo : {Algorithm::kOomd, Algorithm::kExp3, Algorithm::kRandom}) {
    auto cfg = codebook_cfg(50, algo);
    cfg.codebooks = 1;
    all.push_back(run_codebook_experiment(cfg, 7));
  }
  for (std::size_t t = 0; t < 50; ++t) {
    for (const auto& run : all) {
      EXPECT_EQ(run[t].extras[0].second, 0.0);
      EXPECT_EQ(run[t].loss, all[0][t].loss);
    }
  }
}

TEST(CodebookExperiment, ZeroNoiseMeansZeroError) {
  Rng rng(8);
  const auto books = generate_super_codebook(5, 16, 8, 1.0, rng);
  NoiseChannelState state;
  state.noise = Vector::Zero(8);
  state.schedule = {MixingMode::kConstant, 0.0};
  state.innovation = gaussian_innovation(1.0);
  OptimisticLogBarrierBandit policy(5);
  for (int t = 1; t <= 100; ++t) {
    if (t > 1) state = noise_step(std::move(state), rng);
    const auto arm = policy.choose_arm(rng);
    const double loss = ser_codebook(books[arm], transmit_additive_batch(state, books[arm].codewords()));
    EXPECT_EQ(loss, 0.0);
    policy.update_after_loss(arm, loss);
  }
}

TEST(CodebookExperiment, LogsDistributionAndArm) {
  const auto records = run_codebook_experiment(codebook_cfg(100), 2);
  for (const auto& r : records) {
    double total = 0.0;
    for (std::size_t k = 2; k < r.extras.size(); ++k) total += r.extras[k].second;
    EXPECT_NEAR(total, 1.0, 1e-10);
    EXPECT_LE(r.extras[1].second, kMaxLogBarrierEta);
    const auto arm = static_cast<std::size_t>(r.extras[0].second);
    ASSERT_LT(arm, 10u);
  }
}

TEST(Experiment, BitwiseDeterministic) {
  for (const auto& cfg : {decoder_cfg(100), codebook_cfg(100)}) {
    EXPECT_EQ(csv_text(flatten_runs(run_experiment(cfg))), csv_text(flatten_runs(run_experiment(cfg))));
  }
}

TEST(Experiment, SeedIsolationAndParallelism) {
  auto cfg = codebook_cfg(80, Algorithm::kExp3);
  cfg.seeds = {3, 1, 2};
  cfg.jobs = 3;
  const auto many = run_experiment(cfg);
  ASSERT_EQ(many.size(), 3u);
  EXPECT_EQ(many[0].seed, 3u);
  EXPECT_EQ(many[2].seed, 2u);
  cfg.seeds = {2};
  cfg.jobs = 1;
  EXPECT_EQ(run_experiment(cfg)[0].records, many[2].records);

  auto dcfg = decoder_cfg(60);
  dcfg.seeds = {5, 6, 7, 8};
  dcfg.jobs = 4;
  const auto parallel = run_experiment(dcfg);
  dcfg.jobs = 1;
  const auto serial = run_experiment(dcfg);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(parallel[i].records, serial[i].records);
}

TEST(Experiment, RejectsWrongTask) {
  EXPECT_THROW(run_decoder_experiment(codebook_cfg(5), 0), Error);
  EXPECT_THROW(run_codebook_experiment(decoder_cfg(5), 0), Error);
}

TEST(SummarizeFinal, MeanAndStandardError) {
  std::vector<SeedRun> runs(3);
  const double finals[3] = {0.1, 0.2, 0.6};
  for (int i = 0; i < 3; ++i) runs[i].records = {{1, finals[i], finals[i], {}}};
  const auto s = summarize_final(runs);
  EXPECT_NEAR(s.mean, 0.3, 1e-15);
  // Sample std of {0.1, 0.2, 0.6} is sqrt(0.07); divide by sqrt(3).
  EXPECT_NEAR(s.std_error, std::sqrt(0.07 / 3.0), 1e-15);
  EXPECT_EQ(s.count, 3u);
}

TEST(SeparationWarning, FlagsTinyCodebooks) {
  auto cfg = decoder_cfg(5);
  EXPECT_FALSE(separation_warning(cfg, 0).has_value());
  cfg.gamma_x = 1e-3;
  cfg.codewords = 4;
  EXPECT_TRUE(separation_warning(cfg, 0).has_value());
  cfg.gradient = GradientMode::kHinge;
  EXPECT_FALSE(separation_warning(cfg, 0).has_value());
}
