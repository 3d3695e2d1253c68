#include "cstar/random.hpp"

namespace cstar {

namespace {

Matrix gaussian(int n, Rng& rng) {
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = rng.complex_normal();
  return m;
}

}  // namespace

Element random_element(const BlockAlgebra& algebra, Rng& rng) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) blocks.push_back(gaussian(n, rng));
  return Element(algebra, std::move(blocks));
}

Element random_hermitian(const BlockAlgebra& algebra, Rng& rng) { return random_element(algebra, rng).hermitian_part(); }

Element random_invertible(const BlockAlgebra& algebra, Rng& rng, double min_singular) {
  std::vector<Matrix> blocks;
  for (int n : algebra.block_dims()) {
    const Eigen::JacobiSVD<Matrix> svd(gaussian(n, rng), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVector s = svd.singularValues().array() + min_singular;
    blocks.push_back(svd.matrixU() * s.cast<Complex>().asDiagonal() * svd.matrixV().adjoint());
  }
  return Element(algebra, std::move(blocks));
}

CVector random_unit_vector(int n, Rng& rng) {
  CVector v(n);
  for (int k = 0; k < n; ++k) v(k) = rng.complex_normal();
  return v / v.norm();
}

HermitianFunctional random_unit_hermitian_functional(const BlockAlgebra& algebra, Rng& rng) {
  std::vector<Matrix> repr;
  double norm = 0.0;
  for (int n : algebra.block_dims()) {
    repr.push_back(linalg::hermitian_part(gaussian(n, rng)));
    norm += linalg::trace_norm(repr.back());
  }
  for (auto& w : repr) w /= norm;
  return HermitianFunctional(algebra, std::move(repr));
}

}  // namespace cstar
