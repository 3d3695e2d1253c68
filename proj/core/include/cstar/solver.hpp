#pragma once

#include <optional>
#include <string_view>

#include "cstar/algebra.hpp"
#include "cstar/certificate.hpp"
#include "cstar/subalgebra.hpp"

namespace cstar {

struct SolverOptions {
  /// Target width of the certified bracket [lower, upper] around L(A).
  double tol_outer = 1e-7;
  /// Sweeps without a 1e-12 drop in the inter-set gap before a radius is declared infeasible.
  int patience = 200;
  double stall_decrease = 1e-12;
  long max_iterations = 3'000'000;
  int max_rounds = 400;
};

enum class Method { bisection_dykstra, oracle_grid };
std::string_view to_string(Method m);

struct ApproxResult {
  /// Certified upper bound: ‖A − minimizer‖.
  double radius;
  Element minimizer;
  long iterations;
  /// radius − lower_bound.
  double residual;
  Method method;
  /// Lower end of the final bracket; a dual bound unless `lower_certified` is false.
  double lower_bound;
  bool lower_certified = true;
  std::optional<Certificate> certificate;
};

/// L(A) = inf{‖A − B‖ : B ∈ S} by bisection on the radius with Dykstra alternating projections
/// between {A − B : B ∈ S^h} and the operator-norm ball. Non-Hermitian A goes through the
/// Hermitian dilation and M_2(S). Throws BudgetExceeded with the last bracket.
ApproxResult quotient_seminorm(const Element& a, const Subalgebra& s, const SolverOptions& opts = {});

/// quotient_seminorm followed by an attempt to certify the minimizer with a state witness.
ApproxResult best_approximation(const Element& a, const Subalgebra& s, const SolverOptions& opts = {});

struct OracleOptions {
  double resolution = 1e-2;
  /// Each pass makes the final grid spacing 10x finer: spacing = resolution·10^−refine_passes.
  int refine_passes = 1;
};

/// Grid search over the coordinates of S (Hermitian basis, plus i·basis for non-Hermitian A), at
/// most 6 of them. Cells are refined by thirds and discarded only when the 1-Lipschitz bound rules
/// them out, so the value is within the final spacing of L(A) unless the live-cell cap was hit;
/// `lower_certified` reports whether it was not.
ApproxResult oracle_grid(const Element& a, const Subalgebra& s, const OracleOptions& opts = {});

struct SameNormResult {
  double radius_constrained;
  Element minimizer;
  double lower_bound;
  long iterations;
};

/// min ‖A − B‖ over B ∈ S^h with ‖B‖ ≤ ‖A‖.
SameNormResult same_norm_distance(const Element& a, const Subalgebra& s, const SolverOptions& opts = {});

struct MinimalityResult {
  bool minimal;
  double gap;  // ‖Z‖ − L(Z)
  double seminorm;
};

MinimalityResult minimality_check(const Element& z, const Subalgebra& s, double tol = 1e-6,
                                  const SolverOptions& opts = {});

}  // namespace cstar
