#pragma once

#include <doctest.h>

#include "cstar/algebra.hpp"
#include "cstar/subalgebra.hpp"

namespace cstar::testing {

inline Matrix m2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Matrix diag(std::initializer_list<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) m(i, i) = x, ++i;
  return m;
}

inline CVector vec(std::initializer_list<Complex> v) {
  CVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (Complex x : v) out(i++) = x;
  return out / out.norm();
}

inline Matrix flip() { return m2(0, 1, 1, 0); }

inline BlockAlgebra m2_algebra() { return BlockAlgebra({2}); }

inline Element single(const Matrix& m) { return Element(BlockAlgebra({static_cast<int>(m.rows())}), {m}); }

}  // namespace cstar::testing
