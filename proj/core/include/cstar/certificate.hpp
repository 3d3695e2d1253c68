#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cstar/algebra.hpp"
#include "cstar/subalgebra.hpp"

namespace cstar {

/// A vector state on one block: C ↦ ⟨C_block v, v⟩.
struct PureState {
  int block;
  CVector vector;
};

/// Named verification residuals, e.g. "norm_attainment" or "orthogonality".
using ResidualMap = std::map<std::string, double>;

/// A minimality certificate decomposed into pure states definite on Z:
/// φ = Σ t_j φ_j, ψ = Σ t_j ε_j φ_j, with φ_j(Z) = ε_j‖Z‖.
struct Witness {
  BlockAlgebra algebra;
  std::vector<PureState> pure_states;
  std::vector<int> signs;
  std::vector<double> weights;
  ResidualMap residuals;

  int size() const { return static_cast<int>(pure_states.size()); }
  /// φ = Σ t_j φ_j.
  StateDensity state() const;
};

class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// Raised when Carathéodory elimination hits a numerical rank failure.
class ReductionError : public Error {
 public:
  ReductionError(const std::string& what, Witness unreduced) : Error(what), witness(std::move(unreduced)) {}
  Witness witness;
};

struct Verification {
  bool ok = false;
  ResidualMap residuals;
};

/// Checks |φ(Z²) − ‖Z‖²| ≤ tol·‖Z‖² and |φ(ZB + BZ)| ≤ tol·‖Z‖ for every Hermitian basis element B.
/// A passing state proves that Z is minimal with respect to the subalgebra.
Verification verify_witness(const Element& z, const StateDensity& phi, const Subalgebra& s, double tol = 1e-5);

/// Same conditions evaluated in exact rational arithmetic. Returns nullopt unless Z, the density
/// and a rescaled Hermitian basis of S all have rational entries (denominators up to 10^6).
struct ExactVerification {
  bool exact_zero;               // every residual is exactly 0
  std::string norm_attainment;   // φ(Z²) − ‖Z‖², as "p/q"
  std::vector<std::string> orthogonality;  // φ(ZB + BZ) per spanning element
};
std::optional<ExactVerification> verify_witness_exact(const Element& z, const StateDensity& phi, const Subalgebra& s);

struct WitnessSearchOptions {
  double eig_tol = 1e-8;         // relative to ‖Z‖
  double max_eig_tol = 1e-5;     // widening stops here
  double widen_factor = 10.0;
  int max_iterations = 20000;
  int patience = 200;
  double verify_tol = 1e-5;
};

struct WitnessSearch {
  std::optional<StateDensity> state;
  double residual = 0.0;         // worst verification residual of the returned candidate
  double eig_tol_used = 0.0;
  int iterations = 0;
  std::vector<std::string> warnings;

  bool feasible() const { return state.has_value(); }
};

/// Searches for a state supported on the ±‖Z‖ eigenspaces with φ(ZB + BZ) = 0 for all B.
/// An empty result is a diagnostic only; it does not prove that Z is not minimal.
WitnessSearch find_witness(const Element& z, const Subalgebra& s, const WitnessSearchOptions& opts = {});

/// ρ_j ↦ P₊ρ_jP₊ + P₋ρ_jP₋ + P₀ρ_jP₀ over the +‖Z‖, −‖Z‖ and remaining eigenspaces of Z_j
/// (eigenvalues matched within classify·‖Z‖). A witness stays a witness, and afterwards
/// φ(ZB) = 0 for every B in the subalgebra, not only its real part.
StateDensity pinch_to_definite(const StateDensity& phi, const Element& z, double classify = 1e-3);

/// Splits each density block along the +‖Z‖ and −‖Z‖ eigenspaces and then spectrally.
/// Throws DecompositionError if part of φ lives off those eigenspaces.
Witness decompose_pure(const StateDensity& phi, const Element& z, double tol = 1e-5);

/// Removes pure states while their constraint columns are linearly dependent, so the result
/// has at most p+1 states and reproduces the same constraint values.
Witness caratheodory_reduce(const Witness& w, const Subalgebra& s);

/// Re-runs the definiteness and constraint checks on a pure-state witness.
Verification verify_pure_witness(const Witness& w, const Element& z, const Subalgebra& s, double tol = 1e-5);

enum class Uniqueness { unique, inconclusive };

/// unique iff φ restricted to S is faithful (min Gram eigenvalue > 1e-9).
Uniqueness uniqueness_check(const Element& z, const StateDensity& phi, const Subalgebra& s);

/// ψ = Σ t_j ε_j φ_j.
HermitianFunctional witness_to_functional(const Witness& w);
/// As above, but first checks that w certifies Z (ContractViolation otherwise).
HermitianFunctional witness_to_functional(const Witness& w, const Element& z, const Subalgebra& s,
                                          double tol = 1e-5);

/// ‖ψ‖ ≤ 1 + tol, |ψ(b)| ≤ tol for all basis b, |ψ(A) − ‖A − B‖| ≤ tol.
/// A pass certifies B as a best approximation to A.
Verification verify_functional_witness(const HermitianFunctional& psi, const Element& a, const Element& b,
                                       const Subalgebra& s, double tol = 1e-6);

/// A witness together with its verification and pure-state form, as attached to solver results.
struct Certificate {
  StateDensity state;
  Verification verification;
  std::optional<Witness> witness;
  Uniqueness uniqueness;
};

}  // namespace cstar
