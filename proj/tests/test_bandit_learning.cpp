#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "chanlearn/bandit_learning.hpp"
#include "chanlearn/error.hpp"

using namespace chanlearn;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

SimplexPoint random_interior(Rng& rng, std::size_t n) {
  Vector w(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = 0.05 + rng.uniform();
  return SimplexPoint(w / w.sum());
}

// <w, g> + (1/eta) sum_i [w_i/p_i - ln(w_i/p_i) - 1], the log-barrier Bregman objective.
double bregman_objective(double w1, const SimplexPoint& p, const Vector& g, double eta) {
  const double w[2] = {w1, 1.0 - w1};
  double v = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double ratio = w[i] / p[static_cast<std::size_t>(i)];
    v += w[i] * g(i) + (ratio - std::log(ratio) - 1.0) / eta;
  }
  return v;
}

double grid_minimizer(const SimplexPoint& p, const Vector& g, double eta) {
  double best_w = 0.0, best = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 1000000; ++k) {
    const double w1 = k * 1e-6;
    const double v = bregman_objective(w1, p, g, eta);
    if (v < best) {
      best = v;
      best_w = w1;
    }
  }
  return best_w;
}

}  // namespace

TEST(SimplexPoint, RejectsNonInterior) {
  EXPECT_NO_THROW(SimplexPoint(vec({0.25, 0.75})));
  for (const Vector& bad : {vec({0.0, 1.0}), vec({0.5, 0.6}), vec({-0.1, 1.1})}) {
    try {
      SimplexPoint p(bad);
      FAIL() << "expected an error";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kInvalidState);
    }
  }
}

TEST(BregmanStep, ZeroAndConstantLossReturnPrevious) {
  Rng rng(1);
  const auto prev = random_interior(rng, 7);
  EXPECT_EQ(logbarrier_bregman_step(prev, Vector::Zero(7), 0.01).weights(), prev.weights());
  EXPECT_EQ(logbarrier_bregman_step(prev, Vector::Constant(7, 0.3), 0.01).weights(), prev.weights());
}

TEST(BregmanStep, TwoArmExample) {
  const auto prev = SimplexPoint::uniform(2);
  const Vector g = vec({1.0, 0.0});
  const auto w = logbarrier_bregman_step(prev, g, 0.01);
  EXPECT_LT(w[0], 0.5);
  EXPECT_GT(w[1], 0.5);
  EXPECT_NEAR(w.weights().sum(), 1.0, 1e-12);
  EXPECT_NEAR(w[0], grid_minimizer(prev, g, 0.01), 1e-5);
}

TEST(BregmanStep, MatchesGridSearch) {
  Rng rng(2);
  for (int k = 0; k < 5; ++k) {
    const auto prev = random_interior(rng, 2);
    const Vector g = vec({3.0 * rng.normal(), 3.0 * rng.normal()});
    const double eta = 0.005 + 0.5 * rng.uniform();
    EXPECT_NEAR(logbarrier_bregman_step(prev, g, eta)[0], grid_minimizer(prev, g, eta), 1e-5);
  }
}

TEST(BregmanStep, StationarityAndShiftInvariance) {
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + rng.uniform_index(63);
    const auto prev = random_interior(rng, n);
    Vector g(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = 20.0 * rng.uniform();
    const double eta = kMaxLogBarrierEta * (0.1 + rng.uniform());
    const auto w = logbarrier_bregman_step(prev, g, eta);
    EXPECT_NEAR(w.weights().sum(), 1.0, 1e-12);
    EXPECT_TRUE((w.weights().array() > 0.0).all());
    // 1/w_i - 1/prev_i + eta g_i is the same constant eta*lambda for every i.
    const Vector lam = (w.weights().cwiseInverse() - prev.weights().cwiseInverse()) / eta - g;
    EXPECT_LT(lam.maxCoeff() - lam.minCoeff(), 1e-6 * (1.0 + lam.cwiseAbs().maxCoeff()));
    const auto shifted = logbarrier_bregman_step(prev, (g.array() + 4.2).matrix(), eta);
    EXPECT_LT((shifted.weights() - w.weights()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(BregmanStep, RejectsBadInput) {
  const auto p = SimplexPoint::uniform(3);
  EXPECT_THROW(logbarrier_bregman_step(p, Vector::Zero(2), 0.01), Error);
  EXPECT_THROW(logbarrier_bregman_step(p, Vector::Zero(3), 0.0), Error);
}

TEST(LossEstimator, DirectSubstitution) {
  const Vector est = loss_estimator(0.6, vec({0.1, 0.2}), SimplexPoint(vec({0.25, 0.75})), 0);
  EXPECT_NEAR(est(0), 2.1, 1e-15);
  EXPECT_EQ(est(1), 0.2);
}

TEST(LossEstimator, PerfectHintCollapses) {
  const Vector m = vec({0.3, 0.4, 0.5});
  EXPECT_EQ(loss_estimator(0.4, m, SimplexPoint::uniform(3), 1), m);
}

TEST(LossEstimator, UnbiasedAsExactSum) {
  Rng rng(4);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + rng.uniform_index(64);
    const auto w = random_interior(rng, n);
    Vector loss(static_cast<Eigen::Index>(n)), hint(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < loss.size(); ++i) {
      loss(i) = rng.uniform();
      hint(i) = rng.uniform();
    }
    Vector mean = Vector::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      mean += w[i] * loss_estimator(loss(static_cast<Eigen::Index>(i)), hint, w, i);
    EXPECT_LT((mean - loss).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(LossEstimator, RejectsBadInput) {
  const auto w = SimplexPoint::uniform(2);
  EXPECT_THROW(loss_estimator(1.5, Vector::Zero(2), w, 0), Error);
  EXPECT_THROW(loss_estimator(0.5, Vector::Zero(2), w, 2), Error);
  EXPECT_THROW(loss_estimator(0.5, Vector::Zero(3), w, 0), Error);
}

TEST(OptimisticBandit, SingleArm) {
  OptimisticLogBarrierBandit b(1);
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto arm = b.choose_arm(rng);
    EXPECT_EQ(arm, 0u);
    b.update_after_loss(arm, rng.uniform());
  }
}

TEST(OptimisticBandit, DeterministicUnderSeed) {
  const auto run = [](std::uint64_t seed) {
    OptimisticLogBarrierBandit b(10);
    Rng rng(seed);
    std::vector<std::size_t> arms;
    for (int t = 0; t < 200; ++t) {
      arms.push_back(b.choose_arm(rng));
      b.update_after_loss(arms.back(), 0.1 * static_cast<double>(arms.back() % 3));
    }
    return arms;
  };
  EXPECT_EQ(run(6), run(6));
}

TEST(OptimisticBandit, SamplingMatchesPlayedPoint) {
  // Concentrated point; the pick frequency of arm 0 tracks its weight.
  Vector w = Vector::Constant(5, 0.00025);
  w(0) = 0.999;
  Rng rng(7);
  const int n = 100000;
  int hits = 0;
  for (int i = 0; i < n; ++i) hits += rng.categorical(w) == 0;
  EXPECT_NEAR(static_cast<double>(hits) / n, 0.999, 0.005);
}

TEST(OptimisticBandit, HintsTrackLastObservedLoss) {
  OptimisticLogBarrierBandit b(6);
  Rng rng(8);
  Vector expected = Vector::Zero(6);
  for (int t = 0; t < 300; ++t) {
    const auto arm = b.choose_arm(rng);
    const double loss = rng.uniform();
    b.update_after_loss(arm, loss);
    expected(static_cast<Eigen::Index>(arm)) = loss;
    ASSERT_EQ(b.hints(), expected);
    ASSERT_NEAR(b.played().weights().sum(), 1.0, 1e-10);
    ASSERT_NEAR(b.auxiliary().weights().sum(), 1.0, 1e-10);
  }
}

TEST(OptimisticBandit, PerfectHintMovesTowardLowHintArms) {
  OptimisticLogBarrierBandit b(3);
  Rng rng(9);
  // Seed the hints, then feed each arm exactly its hint.
  const double losses[3] = {0.1, 0.5, 0.9};
  for (int t = 0; t < 60; ++t) {
    const auto arm = b.choose_arm(rng);
    b.update_after_loss(arm, losses[arm]);
  }
  const auto& aux = b.auxiliary();
  EXPECT_GT(aux[0], aux[1]);
  EXPECT_GT(aux[1], aux[2]);
}

TEST(OptimisticBandit, UpdateNeedsChoice) {
  OptimisticLogBarrierBandit b(3);
  try {
    b.update_after_loss(0, 0.5);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidState);
  }
}

TEST(OptimisticBandit, RejectsLargeEta) {
  EXPECT_THROW(OptimisticLogBarrierBandit(3, {1.0 / 100.0, false}), Error);
  EXPECT_NO_THROW(OptimisticLogBarrierBandit(3, {kMaxLogBarrierEta, false}));
}

TEST(OptimisticBandit, ConstantLossVector) {
  // With hints equal to the true losses the estimator is the loss vector
  // itself, so w' follows a deterministic full-information recursion. The
  // frozen value comes from an independent bracketed root solve of that
  // recursion for loss (0, 1), eta = 1/162, 2000 steps.
  constexpr double kOracleW1 = 0.07448149096010467;
  const double eta = kMaxLogBarrierEta;
  SimplexPoint full_info = SimplexPoint::uniform(2);
  for (int t = 0; t < 2000; ++t) full_info = logbarrier_bregman_step(full_info, vec({0.0, 1.0}), eta);
  EXPECT_NEAR(full_info[1], kOracleW1, 1e-9);

  double mean = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    OptimisticLogBarrierBandit b(2);
    Rng rng(seed);
    for (int t = 0; t < 2000; ++t) {
      const auto arm = b.choose_arm(rng);
      b.update_after_loss(arm, arm == 0 ? 0.0 : 1.0);
    }
    mean += b.played()[1] / 20.0;
  }
  EXPECT_NEAR(mean, kOracleW1, 0.01);
}

TEST(OptimisticBandit, DoublingNeverRaisesEta) {
  OptimisticLogBarrierBandit b(4, {kMaxLogBarrierEta, true});
  Rng rng(10);
  double prev = b.eta();
  for (int t = 0; t < 2000; ++t) {
    const auto arm = b.choose_arm(rng);
    b.update_after_loss(arm, rng.uniform());
    EXPECT_LE(b.eta(), prev);
    EXPECT_LE(b.eta(), kMaxLogBarrierEta);
    prev = b.eta();
  }
  EXPECT_GT(b.restarts(), 0u);
  // Thresholds are powers of two: after k restarts the error exceeds 2^(k-1).
  EXPECT_GE(b.cumulative_hint_error(), std::ldexp(1.0, static_cast<int>(b.restarts()) - 1));
  EXPECT_DOUBLE_EQ(b.eta(), kMaxLogBarrierEta * std::ldexp(1.0, -static_cast<int>(b.restarts())));
}

TEST(Exp3, StartsUniformAndStaysUniformOnZeroLoss) {
  Exp3Bandit b(5, 100);
  EXPECT_TRUE(b.probabilities().isApprox(Vector::Constant(5, 0.2)));
  Rng rng(11);
  for (int t = 0; t < 100; ++t) b.update_after_loss(b.choose_arm(rng), 0.0);
  EXPECT_TRUE(b.probabilities().isApprox(Vector::Constant(5, 0.2)));
  EXPECT_DOUBLE_EQ(b.eta(), std::sqrt(2.0 * std::log(5.0) / (5.0 * 100.0)));
}

TEST(Exp3, TwoArmRegret) {
  const int horizon = 5000;
  Exp3Bandit b(2, horizon);
  Rng rng(12);
  double regret = 0.0;
  for (int t = 0; t < horizon; ++t) {
    const auto arm = b.choose_arm(rng);
    const double loss = arm == 0 ? 0.0 : 0.5;
    regret += loss;
    b.update_after_loss(arm, loss);
  }
  EXPECT_LE(regret / horizon, 0.05);
}

TEST(RandomSelect, Cases) {
  Rng rng(13);
  EXPECT_EQ(random_select(1, rng), 0u);
  std::vector<int> counts(10, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[random_select(10, rng)];
  for (int c : counts) EXPECT_NEAR(static_cast<double>(c) / n, 0.1, 0.01);
  Rng a(14), b(14);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(random_select(7, a), random_select(7, b));
}
