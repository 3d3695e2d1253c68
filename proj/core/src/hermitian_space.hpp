#pragma once

// Raw-block helpers shared by the iterative solvers. Not part of the installed API.

#include <vector>

#include "cstar/algebra.hpp"
#include "cstar/subalgebra.hpp"

namespace cstar::detail {

using Blocks = std::vector<Matrix>;

inline double real_dot(const Blocks& x, const Blocks& y) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += (x[j].conjugate().cwiseProduct(y[j])).sum().real();
  return s;
}

inline double hs_norm(const Blocks& x) {
  double s = 0.0;
  for (const auto& b : x) s += b.squaredNorm();
  return std::sqrt(s);
}

inline Blocks sub(const Blocks& x, const Blocks& y) {
  Blocks out = x;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] -= y[j];
  return out;
}

inline Blocks add(const Blocks& x, const Blocks& y) {
  Blocks out = x;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += y[j];
  return out;
}

inline double hermitian_norm(const Blocks& x) {
  double m = 0.0;
  for (const auto& b : x) m = std::max(m, linalg::hermitian_norm(b));
  return m;
}

inline Blocks clip(const Blocks& x, double r) {
  Blocks out;
  out.reserve(x.size());
  for (const auto& b : x) out.push_back(linalg::clip_spectrum(b, r));
  return out;
}

inline double trace_norm(const Blocks& x) {
  double s = 0.0;
  for (const auto& b : x) s += linalg::hermitian_eigen(b).values.cwiseAbs().sum();
  return s;
}

/// A real orthonormal basis of a space of Hermitian elements (S^h or M_2(S)^h).
class HermitianSpace {
 public:
  explicit HermitianSpace(std::vector<Blocks> basis) : basis_(std::move(basis)) {}

  static HermitianSpace of(const Subalgebra& s) {
    std::vector<Blocks> b;
    for (const auto& h : s.hermitian_basis()) b.push_back(h.blocks());
    return HermitianSpace(std::move(b));
  }

  /// Hermitian part of M_2(S): diagonal corners from S^h, off-diagonal pairs from S = S^h + iS^h.
  static HermitianSpace dilated(const Subalgebra& s) {
    std::vector<Blocks> out;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const auto& h : s.hermitian_basis()) {
      out.push_back(corner_embed(h, 0, 0).blocks());
      out.push_back(corner_embed(h, 1, 1).blocks());
      for (const Complex phase : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        const Element y = phase * h;
        Element m = corner_embed(y, 1, 0) + corner_embed(y.adjoint(), 0, 1);
        m *= Complex(inv_sqrt2);
        out.push_back(m.blocks());
      }
    }
    return HermitianSpace(std::move(out));
  }

  std::size_t size() const { return basis_.size(); }
  const std::vector<Blocks>& basis() const { return basis_; }

  RVector coords(const Blocks& x) const {
    RVector c(static_cast<Eigen::Index>(basis_.size()));
    for (std::size_t i = 0; i < basis_.size(); ++i) c(static_cast<Eigen::Index>(i)) = real_dot(basis_[i], x);
    return c;
  }

  Blocks combine(const RVector& c, const Blocks& like) const {
    Blocks out;
    out.reserve(like.size());
    for (const auto& b : like) out.push_back(Matrix::Zero(b.rows(), b.cols()));
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const double w = c(static_cast<Eigen::Index>(i));
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += w * basis_[i][j];
    }
    return out;
  }

  Blocks project(const Blocks& x) const { return combine(coords(x), x); }

 private:
  std::vector<Blocks> basis_;
};

}  // namespace cstar::detail
