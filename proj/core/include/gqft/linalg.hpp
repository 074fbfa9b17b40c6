#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace gqft {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// exp(2 pi i k / order), with k reduced mod order before the angle is formed
// so that products of phases of one order stay coherent.
cplx root_of_unity(long long order, long long k);

// max_ij |(U^dagger U - I)_ij|
double unitarity_residual(const Matrix& u);
bool is_unitary(const Matrix& u, double tol);

double max_abs(const Matrix& m);

}  // namespace gqft
