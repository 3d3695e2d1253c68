#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cstar/certificate.hpp"
#include "cstar/solver.hpp"
#include "cstar/subalgebra.hpp"

namespace cstar {

struct CheckReport {
  std::string name;
  int trials = 0;
  double worst_violation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::vector<std::string> details;
};

/// L(AC) ≤ L(A)‖C‖ + ‖A‖L(C) and the same for CA, on seeded Gaussian pairs (alternately Hermitian
/// and general). Tolerance 1e-5.
CheckReport check_leibniz(const Subalgebra& s, int trials, std::uint64_t seed);

/// L(A⁻¹) ≤ ‖A⁻¹‖²L(A) on seeded invertible A, plus L(1) ≤ 1e-9.
CheckReport check_strong_leibniz(const Subalgebra& s, int trials, std::uint64_t seed);

/// gap(A) = same_norm_distance(A) − L(A) ≤ 1e-5 on every trial, and every unconstrained minimizer has
/// ‖B‖ ≤ 2‖A‖ + 1e-6. `designated` elements are run first as extra trials.
CheckReport check_same_norm(const Subalgebra& s, int trials, std::uint64_t seed,
                            const std::vector<Element>& designated = {});

/// For central S: G = radial_retraction(A, F) with F an unconstrained minimizer satisfies ‖G‖ ≤ ‖A‖ and
/// ‖A − G‖ ≤ ‖A − F‖ within 1e-9.
CheckReport check_radial_retraction(const Subalgebra& s, int trials, std::uint64_t seed);

/// Scalar tuples (d_j·1) in (M_2)^3 against constant tuples, plus diagonal tuples whose best
/// approximation is normal and commutes with A.
CheckReport check_commutant_corollaries(std::uint64_t seed, int trials = 100);

/// badnear, non-unique and the {E11, E22, X} exercise.
std::vector<CheckReport> run_paper_examples();

namespace examples {

BlockAlgebra triple_m2();
Subalgebra constant_tuples();
/// Z of the badnear example; ‖Z‖ = 5.
Element badnear_z();
/// A = Z + constant diag(−8, 0).
Element badnear_a();
Element badnear_b();
/// The five pure states definite on Z: φ¹₊, φ²₊, φ²₋, φ³₊, φ³₋.
std::vector<PureState> badnear_pure_states();
/// φ = (1/18)(8φ¹₊ + φ²₊ + 4φ²₋ + 5φ³₋) with signs (+, +, −, −).
Witness badnear_witness();
/// A witness using all five pure states, weights (16, 1, 9, 1, 9)/36.
Witness badnear_witness_all_five();
Element non_unique_a();
Element exercise_a();
/// span{1, X} as constant tuples: contains a best approximation to exercise_a() by symmetry.
Subalgebra exercise_symmetric_subalgebra();

}  // namespace examples

}  // namespace cstar
