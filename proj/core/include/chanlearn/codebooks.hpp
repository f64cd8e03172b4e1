#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "chanlearn/numerics.hpp"
#include "chanlearn/rng.hpp"

#include <json.hpp>

namespace chanlearn {

enum class CodebookConstraint { kPower, kConstantModulus };

std::string to_string(CodebookConstraint c);
CodebookConstraint parse_constraint(const std::string& s);

/// M distinct codewords in R^d stored as the rows of an M x d matrix.
/// Construction validates the norm constraint and distinctness.
class Codebook {
 public:
  static constexpr double kModulusTolerance = 1e-9;

  Codebook(Matrix codewords, CodebookConstraint constraint, double gamma_x);

  std::size_t size() const { return static_cast<std::size_t>(codewords_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(codewords_.cols()); }
  double gamma_x() const { return gamma_x_; }
  CodebookConstraint constraint() const { return constraint_; }

  const Matrix& codewords() const { return codewords_; }
  Vector codeword(std::size_t j) const { return codewords_.row(static_cast<Eigen::Index>(j)).transpose(); }

  friend bool operator==(const Codebook&, const Codebook&) = default;

 private:
  Matrix codewords_;
  CodebookConstraint constraint_;
  double gamma_x_;
};

/// A family of N codebooks sharing M and d; the arms of the selection bandit.
class SuperCodebook {
 public:
  explicit SuperCodebook(std::vector<Codebook> entries);

  std::size_t size() const { return entries_.size(); }
  const Codebook& operator[](std::size_t i) const { return entries_.at(i); }
  const std::vector<Codebook>& entries() const { return entries_; }

 private:
  std::vector<Codebook> entries_;
};

/// Gaussian directions scaled to norm gamma_x.
Codebook make_constant_modulus_codebook(std::size_t m, std::size_t d, double gamma_x,
                                        Rng& rng);

/// N codebooks whose entries are i.i.d. U(-gamma_x/sqrt(d), gamma_x/sqrt(d)),
/// so every codeword satisfies ||x|| <= gamma_x.
SuperCodebook generate_super_codebook(std::size_t n, std::size_t m, std::size_t d,
                                      double gamma_x, Rng& rng);

/// Index minimizing ||x^j - K y||; K = identity when no kernel is given.
/// Ties (equal up to a relative 1e-12) go to the smallest index.
std::size_t nn_decode(const Codebook& cb, const Vector& y,
                      const std::optional<Matrix>& kernel = std::nullopt);

/// Empirical symbol error rate of a linear decoder on one round's training
/// outputs (row j of `outputs` is the output for codeword j). A codeword counts
/// as an error only when its nearest competitor is strictly closer; squared
/// distances equal to within a relative 1e-12 are ties.
double ser_decoder(const Codebook& cb, const Matrix& kernel, const Matrix& outputs);

/// Symbol error rate with the identity decoder.
double ser_codebook(const Codebook& cb, const Matrix& outputs);

double max_pairwise_distance(const Codebook& cb);

void to_json(nlohmann::json& j, const Codebook& cb);
Codebook codebook_from_json(const nlohmann::json& j);

}  // namespace chanlearn
