#include "chanlearn/decoder_learning.hpp"

#include <cmath>

#include "chanlearn/error.hpp"

namespace chanlearn {

namespace {

void check_inputs(const Matrix& kernel, const Codebook& cb, const Matrix& outputs) {
  require(static_cast<std::size_t>(outputs.rows()) == cb.size() &&
              static_cast<std::size_t>(outputs.cols()) == cb.dim(),
          ErrorKind::kDimensionMismatch, "need one d-dimensional output per codeword");
  require(static_cast<std::size_t>(kernel.rows()) == cb.dim() &&
              static_cast<std::size_t>(kernel.cols()) == cb.dim(),
          ErrorKind::kDimensionMismatch, "decoder kernel must be d x d");
}

void check_margin(double margin) {
  require(margin >= 1.0 && std::isfinite(margin), ErrorKind::kInvalidParameter,
          "surrogate margin r must be finite and >= 1");
}

// hinge(j, j') = r - ||x^j' - z_j||^2 + ||x^j - z_j||^2 with z_j = G y^j.
template <typename Visit>
void for_each_pair(const Matrix& kernel, const Codebook& cb, const Matrix& outputs,
                   double margin, Visit&& visit) {
  const Matrix& x = cb.codewords();
  const Matrix z = outputs * kernel.transpose();
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    const double own = (x.row(j) - z.row(j)).squaredNorm();
    for (Eigen::Index k = 0; k < x.rows(); ++k) {
      if (k == j) continue;
      visit(j, k, margin - (x.row(k) - z.row(j)).squaredNorm() + own);
    }
  }
}

}  // namespace

double surrogate_loss(const Matrix& kernel, const Codebook& cb, const Matrix& outputs,
                      double margin) {
  check_margin(margin);
  check_inputs(kernel, cb, outputs);
  double total = 0.0;
  for_each_pair(kernel, cb, outputs, margin,
                [&](Eigen::Index, Eigen::Index, double h) { total += std::max(h, 0.0); });
  return total / static_cast<double>(cb.size());
}

Matrix surrogate_subgradient(const Matrix& kernel, const Codebook& cb, const Matrix& outputs,
                             double margin) {
  check_margin(margin);
  check_inputs(kernel, cb, outputs);
  const Matrix& x = cb.codewords();
  // Row j of `pull` is sum over active j' of (x^j' - x^j).
  Matrix pull = Matrix::Zero(x.rows(), x.cols());
  for_each_pair(kernel, cb, outputs, margin, [&](Eigen::Index j, Eigen::Index k, double h) {
    if (h >= 0.0) pull.row(j) += x.row(k) - x.row(j);
  });
  return (2.0 / static_cast<double>(cb.size())) * pull.transpose() * outputs;
}

Matrix all_active_subgradient(const Codebook& cb, const Matrix& outputs) {
  require(static_cast<std::size_t>(outputs.rows()) == cb.size() &&
              static_cast<std::size_t>(outputs.cols()) == cb.dim(),
          ErrorKind::kDimensionMismatch, "need one d-dimensional output per codeword");
  const Matrix& x = cb.codewords();
  const double m = static_cast<double>(cb.size());
  // sum_{j' != j} (x^j' - x^j) = S - M x^j with S the codeword sum.
  const Eigen::RowVectorXd total = x.colwise().sum();
  const Matrix pull = (-m * x).rowwise() + total;
  return (2.0 / m) * pull.transpose() * outputs;
}

double output_norm_bound(double gamma_x, double gamma_h, double gamma_w) {
  return std::sqrt(2.0 * (gamma_x * gamma_h) * (gamma_x * gamma_h) + 2.0 * gamma_w * gamma_w);
}

double all_active_margin(double d_star, double radius, double output_bound,
                         std::size_t horizon) {
  require(horizon >= 1, ErrorKind::kInvalidParameter, "horizon must be >= 1");
  return 2.0 * d_star * radius * output_bound + 1.0 / std::sqrt(static_cast<double>(horizon));
}

GradientMode parse_gradient_mode(const std::string& s) {
  if (s == "hinge") return GradientMode::kHinge;
  if (s == "all-active" || s == "all_active") return GradientMode::kAllActive;
  fail(ErrorKind::kConfig, "unknown gradient mode '" + s + "' (expected hinge|all-active)");
}

std::string to_string(GradientMode mode) {
  return mode == GradientMode::kHinge ? "hinge" : "all-active";
}

void SurrogateParams::validate() const {
  check_margin(margin);
  require(radius > 0.0 && std::isfinite(radius), ErrorKind::kInvalidParameter,
          "decoder radius D must be positive");
}

Matrix surrogate_gradient(const Matrix& kernel, const Codebook& cb, const Matrix& outputs,
                          const SurrogateParams& params) {
  if (params.mode == GradientMode::kAllActive) return all_active_subgradient(cb, outputs);
  return surrogate_subgradient(kernel, cb, outputs, params.margin);
}

// -- OptimisticDecoderLearner ------------------------------------------------

OptimisticDecoderLearner::OptimisticDecoderLearner(std::size_t dim, SurrogateParams params,
                                                   bool use_hints)
    : params_(params),
      use_hints_(use_hints),
      aux_(Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))),
      hint_(Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))) {
  require(dim >= 1, ErrorKind::kInvalidParameter, "decoder dimension must be >= 1");
  params_.validate();
}

double OptimisticDecoderLearner::step_size() const {
  return params_.radius / std::sqrt(1.0 + cum_sq_);
}

Matrix OptimisticDecoderLearner::next_decoder() const {
  return project_frobenius_ball(aux_ - step_size() * hint_, params_.radius);
}

DecoderRound OptimisticDecoderLearner::play_round(const Codebook& cb, const Matrix& outputs) {
  DecoderRound out;
  out.eta = step_size();
  out.decoder = next_decoder();
  const Matrix grad = surrogate_gradient(out.decoder, cb, outputs, params_);
  require(grad.allFinite(), ErrorKind::kSolverFailure, "non-finite decoder gradient");

  aux_ = project_frobenius_ball(aux_ - out.eta * grad, params_.radius);
  out.deviation = (grad - hint_).norm();
  cum_sq_ += out.deviation * out.deviation;
  if (use_hints_) hint_ = grad;
  ++rounds_;

  out.symbol_error = ser_decoder(cb, out.decoder, outputs);
  out.surrogate = surrogate_loss(out.decoder, cb, outputs, params_.margin);
  return out;
}

// -- GradientDescentDecoderLearner -------------------------------------------

GradientDescentDecoderLearner::GradientDescentDecoderLearner(std::size_t dim,
                                                             SurrogateParams params)
    : params_(params),
      current_(Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))) {
  require(dim >= 1, ErrorKind::kInvalidParameter, "decoder dimension must be >= 1");
  params_.validate();
}

double GradientDescentDecoderLearner::step_size() const {
  return params_.radius / std::sqrt(1.0 + cum_sq_);
}

DecoderRound GradientDescentDecoderLearner::play_round(const Codebook& cb,
                                                       const Matrix& outputs) {
  DecoderRound out;
  out.eta = step_size();
  out.decoder = current_;
  const Matrix grad = surrogate_gradient(current_, cb, outputs, params_);
  require(grad.allFinite(), ErrorKind::kSolverFailure, "non-finite decoder gradient");
  out.deviation = grad.norm();
  cum_sq_ += out.deviation * out.deviation;
  current_ = project_frobenius_ball(current_ - out.eta * grad, params_.radius);

  out.symbol_error = ser_decoder(cb, out.decoder, outputs);
  out.surrogate = surrogate_loss(out.decoder, cb, outputs, params_.margin);
  return out;
}

// -- Least squares -----------------------------------------------------------

namespace {

Matrix regularized_inverse(const Matrix& a, double ridge, const char* what) {
  const Matrix reg = a + ridge * Matrix::Identity(a.rows(), a.cols());
  Eigen::FullPivLU<Matrix> lu(reg);
  require(lu.isInvertible(), ErrorKind::kNumericalSingularity, what);
  return lu.inverse();
}

}  // namespace

Matrix ls_decoder(const Codebook& cb, const Matrix& outputs, double ridge, double radius) {
  require(ridge >= 0.0 && std::isfinite(ridge), ErrorKind::kInvalidParameter,
          "ridge must be >= 0");
  require(static_cast<std::size_t>(outputs.rows()) == cb.size() &&
              static_cast<std::size_t>(outputs.cols()) == cb.dim(),
          ErrorKind::kDimensionMismatch, "need one d-dimensional output per codeword");
  const Matrix& x = cb.codewords();
  const Matrix gram = x.transpose() * x;
  const Matrix h_est =
      outputs.transpose() * x * regularized_inverse(gram, ridge, "codeword Gram matrix is singular");
  const Matrix g = regularized_inverse(h_est.transpose() * h_est, ridge,
                                       "estimated channel gain is singular") *
                   h_est.transpose();
  if (std::isinf(radius)) return g;
  return project_frobenius_ball(g, radius);
}

LeastSquaresDecoder::LeastSquaresDecoder(std::size_t dim, double ridge, SurrogateParams params)
    : ridge_(ridge),
      params_(params),
      last_(Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))) {
  require(ridge >= 0.0, ErrorKind::kInvalidParameter, "ridge must be >= 0");
  params_.validate();
}

DecoderRound LeastSquaresDecoder::play_round(const Codebook& cb, const Matrix& outputs) {
  DecoderRound out;
  out.decoder = ls_decoder(cb, outputs, ridge_, params_.radius);
  last_ = out.decoder;
  out.symbol_error = ser_decoder(cb, out.decoder, outputs);
  out.surrogate = surrogate_loss(out.decoder, cb, outputs, params_.margin);
  return out;
}

}  // namespace chanlearn
