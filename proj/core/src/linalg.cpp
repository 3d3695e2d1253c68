#include "cstar/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace cstar::linalg {

HermitianEigen hermitian_eigen(const Matrix& h) {
  const auto n = h.rows();
  if (n == 1) {
    return {RVector::Constant(1, h(0, 0).real()), Matrix::Identity(1, 1)};
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::ComputeEigenvectors);
  return {es.eigenvalues(), es.eigenvectors()};
}

bool is_hermitian(const Matrix& w, double tol) {
  if (w.rows() != w.cols()) return false;
  const Matrix skew = w - w.adjoint();
  return operator_norm(skew) <= tol * (1.0 + operator_norm(w));
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double trace_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double hermitian_norm(const Matrix& h) {
  if (h.rows() == 1) return std::abs(h(0, 0).real());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

Matrix clip_spectrum(const Matrix& h, double r) {
  const auto eig = hermitian_eigen(h);
  RVector clipped = eig.values;
  bool changed = false;
  for (Eigen::Index i = 0; i < clipped.size(); ++i) {
    const double c = std::clamp(clipped(i), -r, r);
    changed = changed || c != clipped(i);
    clipped(i) = c;
  }
  if (!changed) return hermitian_part(h);
  return eig.vectors * clipped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

Matrix psd_part(const Matrix& h) {
  const auto eig = hermitian_eigen(h);
  RVector pos = eig.values.cwiseMax(0.0);
  return eig.vectors * pos.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

Matrix hermitian_part(const Matrix& w) { return 0.5 * (w + w.adjoint()); }

}  // namespace cstar::linalg
