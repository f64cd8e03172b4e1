#include "chanlearn/bandit_learning.hpp"

#include <cmath>

#include "chanlearn/error.hpp"

namespace chanlearn {

SimplexPoint::SimplexPoint(Vector weights) : w_(std::move(weights)) {
  require(w_.size() >= 1, ErrorKind::kInvalidState, "simplex point needs at least one coordinate");
  require(w_.allFinite() && (w_.array() > 0.0).all(), ErrorKind::kInvalidState,
          "simplex point must be strictly interior");
  require(std::abs(w_.sum() - 1.0) <= kSumTolerance, ErrorKind::kInvalidState,
          "simplex point must sum to one");
}

SimplexPoint SimplexPoint::uniform(std::size_t n) {
  require(n >= 1, ErrorKind::kInvalidParameter, "need at least one arm");
  return SimplexPoint(Vector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n)));
}

SimplexPoint logbarrier_bregman_step(const SimplexPoint& prev, const Vector& g, double eta) {
  require(eta > 0.0 && std::isfinite(eta), ErrorKind::kInvalidParameter, "eta must be positive");
  require(static_cast<std::size_t>(g.size()) == prev.size(), ErrorKind::kDimensionMismatch,
          "loss vector size does not match the simplex");
  require(g.allFinite(), ErrorKind::kInvalidParameter, "loss vector must be finite");

  // A constant shift of g is absorbed by the multiplier.
  if (g.maxCoeff() == g.minCoeff()) return prev;

  // 1/w_i = 1/prev_i + eta (g_i - lambda). Writing lambda = upper - s/eta with
  // upper = min_i (g_i + 1/(eta prev_i)) gives w_i = 1/(a_i + s), a_i >= 0 and
  // min a_i = 0, so sum_i w_i(s) is decreasing with a root in [1, N].
  const Vector scaled = prev.weights().cwiseInverse() + eta * g;
  const Vector a = (scaled.array() - scaled.minCoeff()).matrix();
  const auto sum_at = [&](double s) { return (a.array() + s).inverse().sum(); };

  constexpr int kMaxIterations = 200;
  double lo = 1.0;
  double hi = static_cast<double>(prev.size());
  double s = lo;
  for (int it = 0; it < kMaxIterations; ++it) {
    s = 0.5 * (lo + hi);
    const double f = sum_at(s) - 1.0;
    if (std::abs(f) <= 1e-15 || s == lo || s == hi) break;
    (f > 0.0 ? lo : hi) = s;
  }
  Vector w = (a.array() + s).inverse().matrix();
  const double total = w.sum();
  if (!(std::abs(total - 1.0) <= 1e-12))
    fail(ErrorKind::kSolverFailure, "log-barrier step did not converge");
  w /= total;
  return SimplexPoint(std::move(w));
}

Vector loss_estimator(double loss, const Vector& hints, const SimplexPoint& w,
                      std::size_t chosen) {
  require(static_cast<std::size_t>(hints.size()) == w.size(), ErrorKind::kDimensionMismatch,
          "hint vector size does not match the simplex");
  require(chosen < w.size(), ErrorKind::kInvalidParameter, "chosen arm out of range");
  require(loss >= 0.0 && loss <= 1.0, ErrorKind::kInvalidParameter, "loss must lie in [0, 1]");
  require(w[chosen] > 0.0, ErrorKind::kInvalidState, "chosen arm has zero probability");
  Vector est = hints;
  const auto i = static_cast<Eigen::Index>(chosen);
  est(i) += (loss - hints(i)) / w[chosen];
  return est;
}

// -- OptimisticLogBarrierBandit ------------------------------------------------

OptimisticLogBarrierBandit::OptimisticLogBarrierBandit(std::size_t arms,
                                                       LogBarrierOptions options)
    : options_(options),
      eta_(options.eta),
      w_(SimplexPoint::uniform(arms)),
      aux_(SimplexPoint::uniform(arms)),
      hints_(Vector::Zero(static_cast<Eigen::Index>(arms))) {
  require(eta_ > 0.0 && eta_ <= kMaxLogBarrierEta, ErrorKind::kInvalidParameter,
          "log-barrier eta must lie in (0, 1/162]");
}

std::size_t OptimisticLogBarrierBandit::choose_arm(Rng& rng) {
  w_ = logbarrier_bregman_step(aux_, hints_, eta_);
  awaiting_loss_ = true;
  return rng.categorical(w_.weights());
}

void OptimisticLogBarrierBandit::update_after_loss(std::size_t chosen, double loss) {
  require(awaiting_loss_, ErrorKind::kInvalidState, "update_after_loss without choose_arm");
  awaiting_loss_ = false;
  const Vector est = loss_estimator(loss, hints_, w_, chosen);
  aux_ = logbarrier_bregman_step(aux_, est, eta_);

  const auto i = static_cast<Eigen::Index>(chosen);
  const double miss = loss - hints_(i);
  hints_(i) = loss;
  hint_err_ += miss * miss;

  if (!options_.doubling) return;
  bool restart = false;
  while (hint_err_ >= next_threshold_) {
    next_threshold_ *= 2.0;
    eta_ *= 0.5;
    restart = true;
  }
  if (restart) {
    aux_ = SimplexPoint::uniform(aux_.size());
    ++restarts_;
  }
}

// -- Exp3Bandit ----------------------------------------------------------------

Exp3Bandit::Exp3Bandit(std::size_t arms, std::size_t horizon)
    : cum_(Vector::Zero(static_cast<Eigen::Index>(arms))) {
  require(arms >= 1, ErrorKind::kInvalidParameter, "need at least one arm");
  require(horizon >= 1, ErrorKind::kInvalidParameter, "horizon must be >= 1");
  const double n = static_cast<double>(arms);
  eta_ = std::sqrt(2.0 * std::log(n) / (n * static_cast<double>(horizon)));
  last_probs_ = probabilities();
}

Vector Exp3Bandit::probabilities() const {
  Vector p = (-eta_ * (cum_.array() - cum_.minCoeff())).exp().matrix();
  return p / p.sum();
}

std::size_t Exp3Bandit::choose_arm(Rng& rng) {
  last_probs_ = probabilities();
  return rng.categorical(last_probs_);
}

void Exp3Bandit::update_after_loss(std::size_t chosen, double loss) {
  require(chosen < static_cast<std::size_t>(cum_.size()), ErrorKind::kInvalidParameter,
          "chosen arm out of range");
  const auto i = static_cast<Eigen::Index>(chosen);
  cum_(i) += loss / last_probs_(i);
}

// -- Random --------------------------------------------------------------------

std::size_t random_select(std::size_t arms, Rng& rng) { return rng.uniform_index(arms); }

RandomSelector::RandomSelector(std::size_t arms) : arms_(arms) {
  require(arms >= 1, ErrorKind::kInvalidParameter, "need at least one arm");
}

Vector RandomSelector::distribution() const {
  const auto n = static_cast<Eigen::Index>(arms_);
  return Vector::Constant(n, 1.0 / static_cast<double>(n));
}

}  // namespace chanlearn
