#pragma once

#include <optional>

#include "cstar/algebra.hpp"
#include "cstar/subalgebra.hpp"

namespace cstar {

/// A finite-dimensional *-representation given by the images of the matrix units of its source,
/// in the order of matrix_units(source).
struct Representation {
  BlockAlgebra source;
  int dim = 0;
  std::vector<Matrix> unit_images;
  CVector xi;
  std::optional<CVector> eta;

  Matrix pi(const Element& c) const;
  /// max over matrix-unit pairs of ‖π(xy) − π(x)π(y)‖ and ‖π(x*) − π(x)*‖, plus ‖π(1) − I‖.
  double homomorphism_defect() const;
};

/// GNS representation of a state; Gram eigenvalues below 1e-12·max are quotiented out.
Representation gns(const StateDensity& phi);

/// max over matrix units e of |⟨π(e)ξ, η⟩ − ψ(e)| (η = ξ when absent).
double reproduction_error(const Representation& rep, const Functional& psi);

/// (ℋ, π, U) with U = 2P − I, P the projection onto π(S)ξ.
struct CommutatorSeminorm {
  Representation rep;
  Matrix unitary;
};

/// Throws PreconditionError unless phi verifies as a witness for Z (tolerance 1e-5).
CommutatorSeminorm commutator_unitary(const Element& z, const Subalgebra& s, const StateDensity& phi);

/// ½‖[U, π(C)]‖.
double commutator_seminorm_eval(const CommutatorSeminorm& cs, const Element& c);

/// δ_V(C) = ½[V, π(C)] with V = iU.
class DerivationSeminorm {
 public:
  explicit DerivationSeminorm(CommutatorSeminorm cs) : cs_(std::move(cs)) {}
  Matrix delta(const Element& c) const;
  double operator()(const Element& c) const;
  /// ‖δ(AC) − δ(A)π(C) − π(A)δ(C)‖.
  double leibniz_defect(const Element& a, const Element& c) const;
  /// ‖δ(C*) − δ(C)*‖.
  double adjoint_defect(const Element& c) const;

 private:
  CommutatorSeminorm cs_;
};

enum class FunctionalRoute { doubled, jordan };

/// (π, ξ, η) with ψ(C) = ⟨π(C)ξ, η⟩ for a norm-one functional, restricted to the cyclic
/// subspace of ξ. The doubled route passes through M_2 of the algebra; the Jordan route splits a
/// Hermitian ψ directly. Throws PreconditionError if |‖ψ‖ − 1| > 1e-8.
Representation functional_rep(const Functional& psi);
Representation functional_rep(const HermitianFunctional& psi, FunctionalRoute route = FunctionalRoute::jordan);

}  // namespace cstar
