#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cstar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Absolute tolerance used when an operation is not given one explicitly.
inline constexpr double kDefaultTol = 1e-9;

namespace linalg {

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
struct HermitianEigen {
  RVector values;
  Matrix vectors;
};

/// The single spectral kernel. Only the lower triangle of `h` is read.
HermitianEigen hermitian_eigen(const Matrix& h);

/// ‖W − W*‖ ≤ tol·(1 + ‖W‖), operator norms.
bool is_hermitian(const Matrix& w, double tol);

/// Largest singular value.
double operator_norm(const Matrix& m);

/// Sum of singular values.
double trace_norm(const Matrix& m);

/// Spectral norm of a Hermitian matrix (max |eigenvalue|).
double hermitian_norm(const Matrix& h);

/// Replaces every eigenvalue λ of a Hermitian matrix by clamp(λ, −r, r).
Matrix clip_spectrum(const Matrix& h, double r);

/// Projection onto the positive semidefinite cone.
Matrix psd_part(const Matrix& h);

/// (W + W*)/2.
Matrix hermitian_part(const Matrix& w);

}  // namespace linalg
}  // namespace cstar
