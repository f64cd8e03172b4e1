#pragma once

#include <cstddef>
#include <string>

#include "chanlearn/numerics.hpp"
#include "chanlearn/rng.hpp"

namespace chanlearn {

/// Strictly interior point of the probability simplex.
class SimplexPoint {
 public:
  static constexpr double kSumTolerance = 1e-10;

  explicit SimplexPoint(Vector weights);
  static SimplexPoint uniform(std::size_t n);

  std::size_t size() const { return static_cast<std::size_t>(w_.size()); }
  const Vector& weights() const { return w_; }
  double operator[](std::size_t i) const { return w_(static_cast<Eigen::Index>(i)); }

 private:
  Vector w_;
};

/// argmin_{w in simplex} <w, g> + B_psi(w, prev) for the log-barrier
/// psi(w) = (1/eta) sum_i ln(1/w_i). The minimizer satisfies
/// 1/w_i = 1/prev_i + eta (g_i - lambda); lambda is found by bisection.
SimplexPoint logbarrier_bregman_step(const SimplexPoint& prev, const Vector& g, double eta);

/// Optimistic importance-weighted estimate: hint everywhere, corrected by
/// (loss - hint)/w on the chosen coordinate.
Vector loss_estimator(double loss, const Vector& hints, const SimplexPoint& w,
                      std::size_t chosen);

/// Largest learning rate covered by the regret analysis of the log-barrier
/// learner.
inline constexpr double kMaxLogBarrierEta = 1.0 / 162.0;

/// Common surface for the codebook-selection algorithms.
class ArmPolicy {
 public:
  virtual ~ArmPolicy() = default;
  virtual std::string name() const = 0;
  virtual std::size_t choose_arm(Rng& rng) = 0;
  virtual void update_after_loss(std::size_t chosen, double loss) = 0;
  /// Current learning rate, 0 when the policy has none.
  virtual double eta() const = 0;
  /// Distribution the most recent choose_arm() sampled from.
  virtual Vector distribution() const = 0;
};

struct LogBarrierOptions {
  double eta = kMaxLogBarrierEta;
  /// Restart with eta halved each time the cumulative squared hint error
  /// crosses the next power of two.
  bool doubling = false;
};

/// Optimistic OMD over the simplex with the log-barrier regularizer:
///   w_t      = argmin <w, m_t> + B(w, w'_t)
///   w'_{t+1} = argmin <w, l^_t> + B(w, w'_t)
/// The hint m_{t,i} is the most recent observed loss of arm i (0 before its
/// first pull). w'_1 is uniform.
class OptimisticLogBarrierBandit final : public ArmPolicy {
 public:
  OptimisticLogBarrierBandit(std::size_t arms, LogBarrierOptions options = {});

  std::string name() const override { return "oomd"; }
  std::size_t choose_arm(Rng& rng) override;
  void update_after_loss(std::size_t chosen, double loss) override;
  double eta() const override { return eta_; }
  Vector distribution() const override { return w_.weights(); }

  const SimplexPoint& played() const { return w_; }
  const SimplexPoint& auxiliary() const { return aux_; }
  const Vector& hints() const { return hints_; }
  std::size_t restarts() const { return restarts_; }
  double cumulative_hint_error() const { return hint_err_; }

 private:
  LogBarrierOptions options_;
  double eta_;
  SimplexPoint w_;
  SimplexPoint aux_;
  Vector hints_;
  bool awaiting_loss_ = false;
  double hint_err_ = 0.0;
  double next_threshold_ = 1.0;
  std::size_t restarts_ = 0;
};

/// EXP3 on losses: p_i proportional to exp(-eta L^_i) where L^ accumulates
/// loss/p on the pulled arm; eta = sqrt(2 ln N / (N T)).
class Exp3Bandit final : public ArmPolicy {
 public:
  Exp3Bandit(std::size_t arms, std::size_t horizon);

  std::string name() const override { return "exp3"; }
  std::size_t choose_arm(Rng& rng) override;
  void update_after_loss(std::size_t chosen, double loss) override;
  double eta() const override { return eta_; }
  Vector distribution() const override { return last_probs_; }

  Vector probabilities() const;
  const Vector& cumulative_estimates() const { return cum_; }

 private:
  double eta_;
  Vector cum_;
  Vector last_probs_;
};

std::size_t random_select(std::size_t arms, Rng& rng);

class RandomSelector final : public ArmPolicy {
 public:
  explicit RandomSelector(std::size_t arms);

  std::string name() const override { return "random"; }
  std::size_t choose_arm(Rng& rng) override { return random_select(arms_, rng); }
  void update_after_loss(std::size_t, double) override {}
  double eta() const override { return 0.0; }
  Vector distribution() const override;

 private:
  std::size_t arms_;
};

}  // namespace chanlearn
