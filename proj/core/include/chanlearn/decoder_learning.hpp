#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <string>

#include "chanlearn/codebooks.hpp"
#include "chanlearn/numerics.hpp"

namespace chanlearn {

// Decoder learning on a fading channel. A decoder is a d x d kernel G applied
// to the channel output before nearest-neighbour matching; it lives in the
// Frobenius ball {||G||_F <= radius}. Outputs are passed as an M x d matrix
// whose row j is the received training symbol for codeword j.

/// Surrogate loss
///   (1/M) sum_j sum_{j' != j} [r - ||x^j' - G y^j||^2 + ||x^j - G y^j||^2]_+ .
/// Requires r >= 1 so that it upper-bounds the 0-1 symbol error rate.
double surrogate_loss(const Matrix& kernel, const Codebook& cb, const Matrix& outputs,
                      double margin);

/// Subgradient of surrogate_loss; pair (j, j') contributes
/// 2/M (x^j' - x^j) (y^j)^T whenever its hinge argument is >= 0.
Matrix surrogate_subgradient(const Matrix& kernel, const Codebook& cb,
                             const Matrix& outputs, double margin);

/// The subgradient with every hinge active; independent of the kernel. This is
/// what surrogate_subgradient returns once the margin exceeds 2 d* D L.
Matrix all_active_subgradient(const Codebook& cb, const Matrix& outputs);

/// Bound L on channel-output norms: sqrt(2 (gamma_x gamma_h)^2 + 2 gamma_w^2).
double output_norm_bound(double gamma_x, double gamma_h, double gamma_w);

/// Margin 2 d* D L + 1/sqrt(T) under which every hinge stays active.
double all_active_margin(double d_star, double radius, double output_bound,
                         std::size_t horizon);

enum class GradientMode {
  kHinge,      // indicator-gated subgradient at the configured margin
  kAllActive,  // kernel-independent closed form
};

GradientMode parse_gradient_mode(const std::string& s);  // "hinge" | "all-active"
std::string to_string(GradientMode mode);

struct SurrogateParams {
  GradientMode mode = GradientMode::kAllActive;
  double margin = 1.0;  // r
  double radius = 10.0; // D

  void validate() const;
};

Matrix surrogate_gradient(const Matrix& kernel, const Codebook& cb, const Matrix& outputs,
                          const SurrogateParams& params);

struct DecoderRound {
  Matrix decoder;          // the kernel played this round
  double symbol_error = 0; // 0-1 SER at the played kernel
  double surrogate = 0;    // surrogate loss at the played kernel
  double eta = 0;          // step size used this round (0 for least squares)
  double deviation = 0;    // ||grad_t - hint_t||_F (||grad_t||_F for OGD)
};

/// Common surface for the decoder-task algorithms. next_decoder() is the kernel
/// that play_round() will use, computed only from earlier rounds.
class DecoderPolicy {
 public:
  virtual ~DecoderPolicy() = default;
  virtual std::string name() const = 0;
  virtual Matrix next_decoder() const = 0;
  virtual DecoderRound play_round(const Codebook& cb, const Matrix& outputs) = 0;
};

/// Optimistic online mirror descent with the Euclidean regularizer:
///   G_t      = P[G'_t - eta_t M_t]
///   G'_{t+1} = P[G'_t - eta_t grad_t(G_t)]
/// with hint M_t = grad_{t-1}(G_{t-1}) and
///   eta_t = D / sqrt(1 + sum_{s<t} ||grad_s - M_s||_F^2).
/// Both sequences start at the zero matrix. With use_hints = false the hint is
/// pinned to zero and the method reduces to projected online gradient descent.
class OptimisticDecoderLearner final : public DecoderPolicy {
 public:
  OptimisticDecoderLearner(std::size_t dim, SurrogateParams params, bool use_hints = true);

  std::string name() const override { return "oomd"; }
  Matrix next_decoder() const override;
  DecoderRound play_round(const Codebook& cb, const Matrix& outputs) override;

  double step_size() const;
  const Matrix& auxiliary() const { return aux_; }
  const Matrix& hint() const { return hint_; }
  double cumulative_deviation() const { return cum_sq_; }
  std::size_t rounds_played() const { return rounds_; }

 private:
  SurrogateParams params_;
  bool use_hints_;
  Matrix aux_;
  Matrix hint_;
  double cum_sq_ = 0.0;
  std::size_t rounds_ = 0;
};

/// Projected online gradient descent, G_{t+1} = P[G_t - eta_t grad_t(G_t)],
/// with eta_t = D / sqrt(1 + sum_{s<t} ||grad_s||_F^2).
class GradientDescentDecoderLearner final : public DecoderPolicy {
 public:
  GradientDescentDecoderLearner(std::size_t dim, SurrogateParams params);

  std::string name() const override { return "ogd"; }
  Matrix next_decoder() const override { return current_; }
  DecoderRound play_round(const Codebook& cb, const Matrix& outputs) override;

  double step_size() const;
  double cumulative_sq_norm() const { return cum_sq_; }

 private:
  SurrogateParams params_;
  Matrix current_;
  double cum_sq_ = 0.0;
};

/// Zero-forcing from a per-round least-squares channel estimate:
///   H^ = Y^T X (X^T X + ridge I)^-1,  G = (H^T H^ + ridge I)^-1 H^T,
/// with codewords / outputs as rows of X / Y. Projected onto the ball of
/// `radius` (pass infinity to skip). Throws kNumericalSingularity when a
/// system is singular.
Matrix ls_decoder(const Codebook& cb, const Matrix& outputs, double ridge,
                  double radius = std::numeric_limits<double>::infinity());

/// Builds its kernel from the current round's outputs, so unlike the online
/// learners next_decoder() is undefined before the round; it returns the
/// previous round's kernel.
class LeastSquaresDecoder final : public DecoderPolicy {
 public:
  LeastSquaresDecoder(std::size_t dim, double ridge, SurrogateParams params);

  std::string name() const override { return "ls"; }
  Matrix next_decoder() const override { return last_; }
  DecoderRound play_round(const Codebook& cb, const Matrix& outputs) override;

 private:
  double ridge_;
  SurrogateParams params_;
  Matrix last_;
};

}  // namespace chanlearn
