#include "gqft/linalg.hpp"

#include <cmath>
#include <numbers>

namespace gqft {

cplx root_of_unity(long long order, long long k) {
  if (order <= 0) return {1.0, 0.0};
  long long r = k % order;
  if (r < 0) r += order;
  if (r == 0) return {1.0, 0.0};
  // Exact values on the axes.
  if (4 * r == order) return {0.0, 1.0};
  if (2 * r == order) return {-1.0, 0.0};
  if (4 * r == 3 * order) return {0.0, -1.0};
  const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(r) /
                            static_cast<long double>(order);
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

double unitarity_residual(const Matrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  Matrix d = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return max_abs(d);
}

bool is_unitary(const Matrix& u, double tol) { return unitarity_residual(u) <= tol; }

double max_abs(const Matrix& m) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out = std::max(out, std::abs(m(i, j)));
  return out;
}

}  // namespace gqft
