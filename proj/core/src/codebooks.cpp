#include "chanlearn/codebooks.hpp"

#include <cmath>
#include <limits>

#include "chanlearn/error.hpp"

namespace chanlearn {

std::string to_string(CodebookConstraint c) {
  return c == CodebookConstraint::kPower ? "power" : "constant_modulus";
}

CodebookConstraint parse_constraint(const std::string& s) {
  if (s == "power") return CodebookConstraint::kPower;
  if (s == "constant_modulus") return CodebookConstraint::kConstantModulus;
  fail(ErrorKind::kConfig, "unknown codebook constraint '" + s + "'");
}

Codebook::Codebook(Matrix codewords, CodebookConstraint constraint, double gamma_x)
    : codewords_(std::move(codewords)), constraint_(constraint), gamma_x_(gamma_x) {
  require(codewords_.rows() >= 1 && codewords_.cols() >= 1, ErrorKind::kInvalidParameter,
          "codebook must hold at least one codeword of dimension >= 1");
  require(gamma_x_ > 0.0 && std::isfinite(gamma_x_), ErrorKind::kInvalidParameter,
          "gamma_x must be positive");
  require(codewords_.allFinite(), ErrorKind::kInvalidParameter, "codewords must be finite");
  for (Eigen::Index j = 0; j < codewords_.rows(); ++j) {
    const double norm = codewords_.row(j).norm();
    if (constraint_ == CodebookConstraint::kConstantModulus) {
      require(std::abs(norm - gamma_x_) <= kModulusTolerance, ErrorKind::kInvalidParameter,
              "codeword violates the constant-modulus constraint");
    } else {
      require(norm <= gamma_x_ * (1.0 + 1e-12), ErrorKind::kInvalidParameter,
              "codeword violates the power constraint");
    }
  }
  for (Eigen::Index a = 0; a < codewords_.rows(); ++a)
    for (Eigen::Index b = a + 1; b < codewords_.rows(); ++b)
      require(codewords_.row(a) != codewords_.row(b), ErrorKind::kInvalidParameter,
              "codewords must be pairwise distinct");
}

SuperCodebook::SuperCodebook(std::vector<Codebook> entries) : entries_(std::move(entries)) {
  require(!entries_.empty(), ErrorKind::kInvalidParameter, "super-codebook needs N >= 1");
  for (const auto& cb : entries_)
    require(cb.size() == entries_.front().size() && cb.dim() == entries_.front().dim(),
            ErrorKind::kInvalidParameter, "super-codebook entries must share M and d");
}

Codebook make_constant_modulus_codebook(std::size_t m, std::size_t d, double gamma_x, Rng& rng) {
  require(m >= 2, ErrorKind::kInvalidParameter, "codebook needs M >= 2");
  require(d >= 1, ErrorKind::kInvalidParameter, "codebook needs d >= 1");
  Matrix x(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d));
  for (Eigen::Index j = 0; j < x.rows(); ++j) {
    double norm = 0.0;
    do {
      for (Eigen::Index i = 0; i < x.cols(); ++i) x(j, i) = rng.normal();
      norm = x.row(j).norm();
    } while (!(norm > 1e-12));
    x.row(j) *= gamma_x / norm;
  }
  return Codebook(std::move(x), CodebookConstraint::kConstantModulus, gamma_x);
}

SuperCodebook generate_super_codebook(std::size_t n, std::size_t m, std::size_t d,
                                      double gamma_x, Rng& rng) {
  require(n >= 1, ErrorKind::kInvalidParameter, "super-codebook needs N >= 1");
  require(m >= 1 && d >= 1, ErrorKind::kInvalidParameter, "super-codebook needs M, d >= 1");
  const double half = gamma_x / std::sqrt(static_cast<double>(d));
  std::vector<Codebook> entries;
  entries.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix x(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d));
    for (Eigen::Index j = 0; j < x.rows(); ++j)
      for (Eigen::Index k = 0; k < x.cols(); ++k) {
        double v = rng.uniform(-half, half);
        while (v == -half) v = rng.uniform(-half, half);  // open interval
        x(j, k) = v;
      }
    entries.emplace_back(std::move(x), CodebookConstraint::kPower, gamma_x);
  }
  return SuperCodebook(std::move(entries));
}

namespace {

// Squared distances that agree to within rounding are ties. Normalized
// codewords differ in squared norm by a few ulps, which would otherwise turn
// exact ties (e.g. a zero kernel) into spurious decisions.
constexpr double kTieTolerance = 1e-12;

bool strictly_closer(double a, double b) {
  if (std::isinf(b)) return std::isfinite(a);
  return b - a > kTieTolerance * (a + b);
}

}  // namespace

std::size_t nn_decode(const Codebook& cb, const Vector& y, const std::optional<Matrix>& kernel) {
  require(static_cast<std::size_t>(y.size()) == cb.dim(), ErrorKind::kDimensionMismatch,
          "channel output dimension does not match the codebook");
  Vector z = y;
  if (kernel) {
    require(kernel->rows() == y.size() && kernel->cols() == y.size(),
            ErrorKind::kDimensionMismatch, "decoder kernel must be d x d");
    z = *kernel * y;
  }
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < cb.codewords().rows(); ++j) {
    const double dist = (cb.codewords().row(j).transpose() - z).squaredNorm();
    if (strictly_closer(dist, best_d)) {
      best_d = dist;
      best = static_cast<std::size_t>(j);
    }
  }
  return best;
}

namespace {

// Counts rows whose nearest wrong codeword is strictly closer than the
// transmitted one; `decoded` row j is the (kernel-applied) output for x^j.
double strict_error_rate(const Matrix& codewords, const Matrix& decoded) {
  const Eigen::Index m = codewords.rows();
  std::size_t errors = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const double own = (codewords.row(j) - decoded.row(j)).squaredNorm();
    double rival = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < m; ++k) {
      if (k == j) continue;
      rival = std::min(rival, (codewords.row(k) - decoded.row(j)).squaredNorm());
    }
    if (strictly_closer(rival, own)) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(m);
}

void check_outputs(const Codebook& cb, const Matrix& outputs) {
  require(static_cast<std::size_t>(outputs.rows()) == cb.size(), ErrorKind::kDimensionMismatch,
          "need exactly one channel output per codeword");
  require(static_cast<std::size_t>(outputs.cols()) == cb.dim(), ErrorKind::kDimensionMismatch,
          "channel output dimension does not match the codebook");
}

}  // namespace

double ser_decoder(const Codebook& cb, const Matrix& kernel, const Matrix& outputs) {
  check_outputs(cb, outputs);
  require(static_cast<std::size_t>(kernel.rows()) == cb.dim() &&
              static_cast<std::size_t>(kernel.cols()) == cb.dim(),
          ErrorKind::kDimensionMismatch, "decoder kernel must be d x d");
  return strict_error_rate(cb.codewords(), outputs * kernel.transpose());
}

double ser_codebook(const Codebook& cb, const Matrix& outputs) {
  check_outputs(cb, outputs);
  return strict_error_rate(cb.codewords(), outputs);
}

double max_pairwise_distance(const Codebook& cb) {
  require(cb.size() >= 2, ErrorKind::kInvalidParameter, "need at least two codewords");
  double best = 0.0;
  const Matrix& x = cb.codewords();
  for (Eigen::Index a = 0; a < x.rows(); ++a)
    for (Eigen::Index b = a + 1; b < x.rows(); ++b)
      best = std::max(best, (x.row(a) - x.row(b)).norm());
  return best;
}

void to_json(nlohmann::json& j, const Codebook& cb) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < cb.codewords().rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < cb.codewords().cols(); ++c) row.push_back(cb.codewords()(r, c));
    rows.push_back(std::move(row));
  }
  j = nlohmann::json{{"M", cb.size()},
                     {"d", cb.dim()},
                     {"gamma_x", cb.gamma_x()},
                     {"constraint", to_string(cb.constraint())},
                     {"codewords", std::move(rows)}};
}

Codebook codebook_from_json(const nlohmann::json& j) {
  try {
    const auto m = j.at("M").get<std::size_t>();
    const auto d = j.at("d").get<std::size_t>();
    const auto& rows = j.at("codewords");
    require(rows.is_array() && rows.size() == m, ErrorKind::kConfig,
            "codebook JSON: 'codewords' must hold M rows");
    Matrix x(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < m; ++r) {
      require(rows[r].is_array() && rows[r].size() == d, ErrorKind::kConfig,
              "codebook JSON: every codeword must have d entries");
      for (std::size_t c = 0; c < d; ++c)
        x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c].get<double>();
    }
    return Codebook(std::move(x), parse_constraint(j.at("constraint").get<std::string>()),
                    j.at("gamma_x").get<double>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kConfig, std::string("codebook JSON: ") + e.what());
  }
}

}  // namespace chanlearn
