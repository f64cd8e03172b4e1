#include <benchmark/benchmark.h>

#include "chanlearn/bandit_learning.hpp"
#include "chanlearn/channels.hpp"
#include "chanlearn/codebooks.hpp"
#include "chanlearn/decoder_learning.hpp"
#include "chanlearn/rng.hpp"

namespace {

using namespace chanlearn;

struct DecoderFixture {
  Rng rng{Rng::derive(7, 0)};
  Codebook cb;
  Matrix outputs;
  Matrix kernel;

  explicit DecoderFixture(std::size_t m, std::size_t d)
      : cb(make_constant_modulus_codebook(m, d, 1.0, rng)) {
    auto mix = make_mixture(InnovationKind::kGaussian, 3, 0.1, rng);
    auto ch = make_markov_fading(d, MixingSchedule{}, mix, sigma_w_from_snr(24.0, 1.0, d), rng);
    outputs = transmit_fading_batch(ch, cb.codewords(), rng);
    kernel = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  }
};

void BM_LogBarrierStep(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  Rng rng(1);
  Vector g(n);
  for (Eigen::Index i = 0; i < n; ++i) g(i) = rng.uniform(0.0, 1.0);
  SimplexPoint w(Vector::Constant(n, 1.0 / static_cast<double>(n)));
  for (auto _ : state) {
    w = logbarrier_bregman_step(w, g, 1.0 / 162.0);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_LogBarrierStep)->Arg(10)->Arg(100)->Arg(1000);

void BM_HingeSubgradient(benchmark::State& state) {
  DecoderFixture f(static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(surrogate_subgradient(f.kernel, f.cb, f.outputs, 1.0));
}
BENCHMARK(BM_HingeSubgradient)->Arg(16)->Arg(64);

void BM_AllActiveSubgradient(benchmark::State& state) {
  DecoderFixture f(static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(all_active_subgradient(f.cb, f.outputs));
}
BENCHMARK(BM_AllActiveSubgradient)->Arg(16)->Arg(64);

void BM_SerDecoder(benchmark::State& state) {
  DecoderFixture f(static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(ser_decoder(f.cb, f.kernel, f.outputs));
}
BENCHMARK(BM_SerDecoder)->Arg(16)->Arg(64);

void BM_OomdRound(benchmark::State& state) {
  DecoderFixture f(64, 8);
  OptimisticDecoderLearner learner(8, SurrogateParams{});
  for (auto _ : state) benchmark::DoNotOptimize(learner.play_round(f.cb, f.outputs));
}
BENCHMARK(BM_OomdRound);

}  // namespace

BENCHMARK_MAIN();
