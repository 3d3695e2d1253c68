#pragma once

// Log-sum-exp smoothing of the spectral norm, minimised by damped Newton over the coordinates of a
// Hermitian space. Used to seed the bisection bracket.

#include "hermitian_space.hpp"

namespace cstar::detail {

struct SmoothBracket {
  double lo = 0.0;   // dual bound from the softmax density, projected off the space
  double hi = 0.0;   // ‖A − best‖
  Blocks best;
  long iterations = 0;
};

SmoothBracket smoothed_bracket(const Blocks& a, const HermitianSpace& space, double tol, long max_iterations);

/// Dual lower bound tr(W'A)/‖W'‖_tr with W' = W − P(W).
double dual_bound(const Blocks& a, const HermitianSpace& space, const Blocks& w);

}  // namespace cstar::detail
