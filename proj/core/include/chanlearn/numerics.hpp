#pragma once

#include <Eigen/Dense>

namespace chanlearn {

// Dense double-precision storage for gains, kernels, codewords and outputs.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

bool all_finite(const Matrix& m);
bool all_finite(const Vector& v);

double frobenius_norm(const Matrix& m);

/// Euclidean projection onto {G : ||G||_F <= radius}. Interior points are
/// returned unchanged, exterior points are scaled radially onto the sphere.
Matrix project_frobenius_ball(Matrix m, double radius);

/// Standard normal upper tail, Q(x) = P(N(0,1) > x), via erfc so the tail
/// keeps full relative precision.
double q_function(double x);

}  // namespace chanlearn
