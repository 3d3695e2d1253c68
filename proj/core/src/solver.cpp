#include "cstar/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hermitian_space.hpp"
#include "smoothing.hpp"

namespace cstar {

using detail::Blocks;
using detail::HermitianSpace;

std::string_view to_string(Method m) {
  switch (m) {
    case Method::bisection_dykstra: return "bisection_dykstra";
    case Method::oracle_grid: return "oracle_grid";
  }
  return "unknown";
}

namespace {

// Minimise ‖A − B‖ over B in a space of Hermitian elements, optionally subject to ‖B‖ ≤ bound.
//
// Feasibility of a radius r is tested with Dykstra's algorithm in the product space
// {(A − B, B)} against the ball(s). Every iterate gives a certified upper bound (its own
// value); every displacement vector gives a certified lower bound through the functional it
// defines on the orthogonal complement of the space.
class MinimaxEngine {
 public:
  MinimaxEngine(Blocks a, const HermitianSpace& space, std::optional<double> bound, const SolverOptions& opts)
      : a_(std::move(a)), space_(space), bound_(bound), opts_(opts) {}

  struct Outcome {
    double lo;
    double hi;
    Blocks minimizer;
    long iterations;
    bool lo_certified;
  };

  Outcome run(const Blocks& start, double lo0 = 0.0) {
    best_ = feasible_point(start);
    hi_ = value(best_);
    if (bound_) {
      Blocks zero = detail::sub(a_, a_);
      const double v0 = value(zero);
      if (v0 < hi_) {
        hi_ = v0;
        best_ = zero;
      }
    }
    lo_ = std::min(lo0, hi_);
    for (int round = 0; hi_ - lo_ > opts_.tol_outer; ++round) {
      if (round >= opts_.max_rounds || iterations_ >= opts_.max_iterations) {
        throw BudgetExceeded("quotient_seminorm: iteration budget exhausted", lo_, hi_);
      }
      const double mid = 0.5 * (lo_ + hi_);
      const double margin = (hi_ - lo_) / 6.0;
      run_round(mid, margin);
      lo_ = std::min(lo_, hi_);
    }
    return {lo_, hi_, best_, iterations_, lo_certified_};
  }

 private:
  // Projects B onto the feasible set of the B-component: the space, then the norm bound.
  Blocks feasible_point(const Blocks& b) const {
    Blocks out = space_.project(b);
    if (!bound_) return out;
    const double n = detail::hermitian_norm(out);
    if (n <= *bound_) return out;
    // Functional calculus keeps the clipped element in the subalgebra; project again to strip
    // round-off and rescale if that nudged the norm past the bound.
    out = space_.project(detail::clip(out, *bound_));
    const double n2 = detail::hermitian_norm(out);
    if (n2 > *bound_) {
      for (auto& m : out) m *= *bound_ / n2;
    }
    return out;
  }

  double value(const Blocks& b) const { return detail::hermitian_norm(detail::sub(a_, b)); }

  void offer(const Blocks& b) {
    const double v = value(b);
    if (v < hi_) {
      hi_ = v;
      best_ = b;
    }
  }

  // Lower bound from displacement vectors d1 (radius ball) and d2 (bound ball).
  void offer_dual(const Blocks& d1_raw, const Blocks* d2_raw) {
    Blocks d1 = d1_raw;
    double penalty = 0.0;
    if (d2_raw != nullptr) {
      Blocks d2 = *d2_raw;
      // make d1 − d2 orthogonal to the space
      const Blocks corr = space_.project(detail::sub(d1, d2));
      d2 = detail::add(d2, corr);
      penalty = *bound_ * detail::trace_norm(d2);
    } else {
      d1 = detail::sub(d1, space_.project(d1));
    }
    const double tn = detail::trace_norm(d1);
    if (tn <= 1e-300) return;
    const double lb = (detail::real_dot(d1, a_) - penalty) / tn;
    if (lb > lo_) lo_ = std::min(lb, hi_);
  }

  void run_round(double radius, double margin) {
    Blocks b = best_;
    Blocks p1 = detail::sub(b, b);
    Blocks p2 = p1;
    double best_gap = std::numeric_limits<double>::infinity();
    long last_improvement = 0;
    constexpr int kDualEvery = 8;
    for (long it = 0;; ++it) {
      ++iterations_;
      // ball of radius `radius` for A − B
      const Blocks x = detail::add(detail::sub(a_, b), p1);
      const Blocks u1 = detail::clip(x, radius);
      p1 = detail::sub(x, u1);
      Blocks target;
      Blocks u2;
      if (bound_) {
        const Blocks y = detail::add(b, p2);
        u2 = detail::clip(y, *bound_);
        p2 = detail::sub(y, u2);
        // least-squares point of {(A − B, B)} nearest to (u1, u2)
        target = detail::sub(a_, u1);
        target = detail::add(target, u2);
        for (auto& m : target) m *= 0.5;
      } else {
        target = detail::sub(a_, u1);
      }
      // The affine set needs no Dykstra correction: its correction is orthogonal to the space.
      b = space_.project(target);

      offer(feasible_point(b));
      if (hi_ <= radius + margin) return;

      const Blocks d1 = detail::sub(detail::sub(a_, b), u1);
      Blocks d2;
      double gap2 = detail::real_dot(d1, d1);
      if (bound_) {
        d2 = detail::sub(b, u2);
        gap2 += detail::real_dot(d2, d2);
      }
      if (it % kDualEvery == kDualEvery - 1) {
        offer_dual(d1, bound_ ? &d2 : nullptr);
        if (lo_ >= radius - margin) return;
      }
      const double gap = std::sqrt(gap2);
      if (gap < best_gap - opts_.stall_decrease) {
        best_gap = gap;
        last_improvement = it;
      } else if (it - last_improvement >= opts_.patience) {
        offer_dual(d1, bound_ ? &d2 : nullptr);
        // Stalled short of the target: treat the radius as infeasible. The upper end stays
        // certified, only the lower end becomes heuristic.
        if (lo_ < radius) {
          lo_ = std::min(radius, hi_);
          lo_certified_ = false;
        }
        return;
      }
      if (iterations_ >= opts_.max_iterations) return;
    }
  }

  Blocks a_;
  const HermitianSpace& space_;
  std::optional<double> bound_;
  SolverOptions opts_;
  Blocks best_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  long iterations_ = 0;
  bool lo_certified_ = true;
};

struct Reduced {
  Blocks target;
  HermitianSpace space;
  bool dilated;
};

Reduced reduce(const Element& a, const Subalgebra& s) {
  require_same_algebra(a.algebra(), s.algebra(), "quotient_seminorm");
  if (a.is_hermitian()) return {a.hermitian_part().blocks(), HermitianSpace::of(s), false};
  return {hermitian_dilation(a).blocks(), HermitianSpace::dilated(s), true};
}

Element lift(const Blocks& b, const Element& a, bool dilated) {
  if (!dilated) return Element(a.algebra(), b);
  const Element m(a.algebra().doubled(), b);
  // The off-diagonal part of a best approximation in M_2(S) is again best; its lower-left
  // corner approximates A.
  return corner_extract(m, a.algebra(), 1, 0);
}

}  // namespace

ApproxResult quotient_seminorm(const Element& a, const Subalgebra& s, const SolverOptions& opts) {
  Reduced r = reduce(a, s);
  const auto seed = detail::smoothed_bracket(r.target, r.space, opts.tol_outer, opts.max_iterations);
  MinimaxEngine engine(r.target, r.space, std::nullopt, opts);
  auto out = engine.run(seed.best, seed.lo);
  out.iterations += seed.iterations;
  Element minimizer = lift(out.minimizer, a, r.dilated);
  const double radius = r.dilated ? std::min(out.hi, element_norm(a - minimizer)) : out.hi;
  return {radius, std::move(minimizer), out.iterations, radius - out.lo, Method::bisection_dykstra,
          out.lo, out.lo_certified, std::nullopt};
}

ApproxResult best_approximation(const Element& a, const Subalgebra& s, const SolverOptions& opts) {
  ApproxResult res = quotient_seminorm(a, s, opts);
  const bool dilate = !a.is_hermitian();
  const Element z = dilate ? hermitian_dilation(a - res.minimizer) : a - res.minimizer;
  if (element_norm(z) <= 1e-12) return res;
  const Subalgebra target = dilate ? dilated_subalgebra(s) : s;
  const WitnessSearch search = find_witness(z, target);
  if (!search.feasible()) return res;
  Certificate cert{*search.state, verify_witness(z, *search.state, target), std::nullopt,
                   uniqueness_check(z, *search.state, target)};
  try {
    cert.witness = caratheodory_reduce(decompose_pure(*search.state, z), target);
  } catch (const Error&) {
    // the density certificate stands on its own
  }
  res.certificate = std::move(cert);
  return res;
}

SameNormResult same_norm_distance(const Element& a, const Subalgebra& s, const SolverOptions& opts) {
  const ApproxResult free = quotient_seminorm(a, s, opts);
  const double bound = element_norm(a);
  if (element_norm(free.minimizer) <= bound + opts.tol_outer) {
    return {free.radius, free.minimizer, free.lower_bound, free.iterations};
  }
  Reduced r = reduce(a, s);
  const Blocks start = r.dilated ? hermitian_dilation(free.minimizer).blocks() : free.minimizer.blocks();
  MinimaxEngine engine(r.target, r.space, bound, opts);
  const auto out = engine.run(start, free.lower_bound);
  Element minimizer = lift(out.minimizer, a, r.dilated);
  const double radius = r.dilated ? std::min(out.hi, element_norm(a - minimizer)) : out.hi;
  return {radius, std::move(minimizer), std::max(out.lo, free.lower_bound), free.iterations + out.iterations};
}

MinimalityResult minimality_check(const Element& z, const Subalgebra& s, double tol, const SolverOptions& opts) {
  const ApproxResult res = quotient_seminorm(z, s, opts);
  const double norm = element_norm(z);
  return {std::abs(res.radius - norm) <= tol, norm - res.radius, res.radius};
}

}  // namespace cstar
