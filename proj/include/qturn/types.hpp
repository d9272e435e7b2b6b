#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qturn {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Kronecker product of dense complex matrices.
Mat kron(const Mat& a, const Mat& b);

// exp(-i t H) for Hermitian H, via eigendecomposition.
Mat expi_hermitian(const Mat& h, double t);

// Integer matrix power, p >= 0.
Mat matrix_power(const Mat& m, int p);

// Frobenius norm of a - b.
double residual(const Mat& a, const Mat& b);

// Max |u u^dag - I| entry, as a unitarity check.
double unitarity_defect(const Mat& u);

// Reduce an angle to (-pi, pi].
double normalize_angle(double a);

}  // namespace qturn
