#include "chanlearn/numerics.hpp"

#include <cmath>

#include "chanlearn/error.hpp"

namespace chanlearn {

bool all_finite(const Matrix& m) { return m.allFinite(); }
bool all_finite(const Vector& v) { return v.allFinite(); }

double frobenius_norm(const Matrix& m) { return m.norm(); }

Matrix project_frobenius_ball(Matrix m, double radius) {
  require(radius > 0.0 && std::isfinite(radius), ErrorKind::kInvalidParameter,
          "projection radius must be positive and finite");
  const double norm = m.norm();
  if (norm > radius) m *= radius / norm;
  return m;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace chanlearn
