#include "smoothing.hpp"

#include <algorithm>
#include <cmath>

namespace cstar::detail {

namespace {

struct Eval {
  double f = 0.0;        // smoothed norm
  double norm = 0.0;     // exact ‖H‖
  std::vector<linalg::HermitianEigen> eig;
  double m = 0.0;
  double t = 0.0;
  Blocks w;              // softmax density difference, ‖w‖_tr ≤ 1
};

Blocks residual(const Blocks& a, const HermitianSpace& space, const RVector& c) {
  return sub(a, space.combine(c, a));
}

Eval evaluate(const Blocks& h, double beta) {
  Eval e;
  e.eig.reserve(h.size());
  for (const auto& b : h) {
    e.eig.push_back(linalg::hermitian_eigen(b));
    e.m = std::max(e.m, e.eig.back().values.cwiseAbs().maxCoeff());
  }
  e.norm = e.m;
  for (const auto& eg : e.eig) {
    for (Eigen::Index k = 0; k < eg.values.size(); ++k) {
      const double l = eg.values(k);
      e.t += std::exp(beta * (l - e.m)) + std::exp(-beta * (l + e.m));
    }
  }
  e.f = e.m + std::log(e.t) / beta;
  for (const auto& eg : e.eig) {
    RVector d(eg.values.size());
    for (Eigen::Index k = 0; k < d.size(); ++k) {
      const double l = eg.values(k);
      d(k) = (std::exp(beta * (l - e.m)) - std::exp(-beta * (l + e.m))) / e.t;
    }
    e.w.push_back(eg.vectors * d.cast<Complex>().asDiagonal() * eg.vectors.adjoint());
  }
  return e;
}

double smoothed(const Blocks& h, double beta) {
  double m = 0.0;
  std::vector<RVector> vals;
  for (const auto& b : h) {
    vals.push_back(linalg::hermitian_eigen(b).values);
    m = std::max(m, vals.back().cwiseAbs().maxCoeff());
  }
  double t = 0.0;
  for (const auto& v : vals)
    for (Eigen::Index k = 0; k < v.size(); ++k) t += std::exp(beta * (v(k) - m)) + std::exp(-beta * (v(k) + m));
  return m + std::log(t) / beta;
}

RMatrix hessian(const Eval& e, const HermitianSpace& space, const RVector& g, double beta) {
  const auto p = static_cast<Eigen::Index>(space.size());
  RMatrix hess = RMatrix::Zero(p, p);
  for (std::size_t j = 0; j < e.eig.size(); ++j) {
    const auto& eg = e.eig[j];
    const Eigen::Index n = eg.values.size();
    RMatrix gamma(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
      for (Eigen::Index b = 0; b < n; ++b) {
        const double x = eg.values(a);
        const double y = eg.values(b);
        const double d = std::abs(x - y);
        const double phi = (beta * d < 1e-12) ? beta : -std::expm1(-beta * d) / d;
        gamma(a, b) = (std::exp(beta * (std::max(x, y) - e.m)) + std::exp(-beta * (std::min(x, y) + e.m))) * phi / e.t;
      }
    }
    std::vector<Matrix> rotated;
    rotated.reserve(space.size());
    for (const auto& bi : space.basis()) rotated.push_back(eg.vectors.adjoint() * bi[j] * eg.vectors);
    for (Eigen::Index i = 0; i < p; ++i) {
      const Matrix gi = rotated[static_cast<std::size_t>(i)].cwiseProduct(gamma.cast<Complex>());
      for (Eigen::Index k = i; k < p; ++k) {
        const double v = (gi.cwiseProduct(rotated[static_cast<std::size_t>(k)].conjugate())).sum().real();
        hess(i, k) += v;
        if (k != i) hess(k, i) += v;
      }
    }
  }
  hess -= beta * g * g.transpose();
  return hess;
}

}  // namespace

double dual_bound(const Blocks& a, const HermitianSpace& space, const Blocks& w) {
  const Blocks wp = sub(w, space.project(w));
  const double tn = trace_norm(wp);
  if (tn <= 1e-300) return 0.0;
  return real_dot(wp, a) / tn;
}

SmoothBracket smoothed_bracket(const Blocks& a, const HermitianSpace& space, double tol, long max_iterations) {
  SmoothBracket out;
  const auto p = static_cast<Eigen::Index>(space.size());
  RVector c = space.coords(a);
  out.best = space.combine(c, a);
  out.hi = hermitian_norm(sub(a, out.best));
  out.lo = 0.0;
  const double scale = out.hi;
  if (scale <= 1e-300 || p == 0) {
    out.lo = out.hi;
    return out;
  }
  std::size_t dim = 0;
  for (const auto& b : a) dim += static_cast<std::size_t>(b.rows());
  const double log2n = std::log(2.0 * static_cast<double>(dim));

  for (double beta = 4.0 * log2n / scale; beta * scale < 1e15; beta *= 8.0) {
    for (int it = 0; it < 60 && out.iterations < max_iterations; ++it) {
      ++out.iterations;
      const Eval e = evaluate(residual(a, space, c), beta);
      if (e.norm < out.hi) {
        out.hi = e.norm;
        out.best = space.combine(c, a);
      }
      out.lo = std::max(out.lo, std::min(dual_bound(a, space, e.w), out.hi));
      if (out.hi - out.lo <= tol) return out;

      RVector g(p);
      for (Eigen::Index i = 0; i < p; ++i) g(i) = -real_dot(space.basis()[static_cast<std::size_t>(i)], e.w);
      RMatrix hess = hessian(e, space, g, beta);
      const double shift = 1e-12 * std::max(hess.diagonal().cwiseAbs().maxCoeff(), 1e-300);
      hess.diagonal().array() += shift;
      const Eigen::LDLT<RMatrix> ldlt(hess);
      RVector step = ldlt.solve(-g);
      if (!step.allFinite() || g.dot(step) >= 0.0) step = -g;
      const double slope = g.dot(step);
      if (-slope < 1e-15 * (1.0 + std::abs(e.f)) / beta) break;

      double t = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 50; ++ls, t *= 0.5) {
        const RVector trial = c + t * step;
        if (smoothed(residual(a, space, trial), beta) <= e.f + 0.25 * t * slope) {
          c = trial;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    if (out.iterations >= max_iterations) break;
  }
  // final point of the last stage
  const Blocks b = space.combine(c, a);
  const double v = hermitian_norm(sub(a, b));
  if (v < out.hi) {
    out.hi = v;
    out.best = b;
  }
  out.lo = std::min(out.lo, out.hi);
  return out;
}

}  // namespace cstar::detail
