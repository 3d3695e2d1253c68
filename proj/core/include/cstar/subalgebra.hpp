#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cstar/algebra.hpp"

namespace cstar {

/// A unital *-subalgebra of a BlockAlgebra, stored as a Hilbert–Schmidt orthonormal basis.
///
/// Besides the complex basis the subalgebra keeps a real orthonormal basis of its Hermitian
/// part (real inner product Re trace(X* Y)); its size is `real_herm_dim()`, the number p used
/// by every dimension count in this library. For a *-closed subalgebra p equals the complex
/// dimension.
class Subalgebra {
 public:
  /// Validates orthonormality (1e-9), closure under adjoint and products (1e-8) and the unit.
  /// Throws ContractViolation when any invariant fails.
  static Subalgebra from_orthonormal_basis(const BlockAlgebra& algebra, std::vector<Element> basis,
                                           std::string label = {});

  const BlockAlgebra& algebra() const { return algebra_; }
  const std::vector<Element>& basis() const { return basis_; }
  const std::vector<Element>& hermitian_basis() const { return herm_basis_; }
  bool contains_unit() const { return contains_unit_; }
  int complex_dimension() const { return static_cast<int>(basis_.size()); }
  int real_herm_dim() const { return static_cast<int>(herm_basis_.size()); }
  const std::string& label() const { return label_; }

  /// Coordinates of the Hermitian projection of X in the Hermitian basis.
  RVector hermitian_coordinates(const Element& x) const;
  /// Σ c_i H_i.
  Element from_hermitian_coordinates(const RVector& c) const;

 private:
  Subalgebra(BlockAlgebra algebra, std::vector<Element> basis, std::vector<Element> herm_basis,
             bool contains_unit, std::string label);

  BlockAlgebra algebra_;
  std::vector<Element> basis_;
  std::vector<Element> herm_basis_;
  bool contains_unit_;
  std::string label_;
};

/// Smallest unital *-subalgebra containing the generators.
Subalgebra build_subalgebra(const BlockAlgebra& algebra, std::span<const Element> generators);

enum class SubalgebraKind { scalars, diagonal, block_diagonal, constant_tuple, center };

std::optional<SubalgebraKind> parse_subalgebra_kind(std::string_view name);
std::string_view to_string(SubalgebraKind kind);

struct SubalgebraParams {
  /// Part sizes for block_diagonal; applied to every block, each part sum must match.
  std::vector<int> partition;
};

/// The named subalgebras. constant_tuple requires equal block sizes (UnsupportedError otherwise).
Subalgebra standard_subalgebra(const BlockAlgebra& algebra, SubalgebraKind kind,
                               const SubalgebraParams& params = {});

/// M_2(S) inside M_2 of the ambient algebra.
Subalgebra dilated_subalgebra(const Subalgebra& s);

/// Orthogonal projection Σ_b trace(b* X) b.
Element hs_project(const Element& x, const Subalgebra& s);

/// ‖X − hs_project(X)‖_HS.
double projection_residual(const Element& x, const Subalgebra& s);

/// True iff every basis element commutes with every matrix unit (within 1e-9).
bool is_central(const Subalgebra& s);

struct RetractionResult {
  Element retracted;
  double norm_retracted;    // ‖G‖
  double distance_before;   // ‖A − F‖
  double distance_after;    // ‖A − G‖
};

/// Pulls a central F back to the ball of radius ‖A‖ blockwise: λ_j ↦ λ_j·min(1, ‖A‖/|λ_j|).
/// Throws PreconditionError unless S is central and F ∈ S. For ‖A‖ = 0 the target ball is
/// {0} and the zero element is returned.
RetractionResult radial_retraction(const Element& a, const Element& f, const Subalgebra& s);

struct Restriction {
  Matrix gram;     // gram(i, k) = φ(b_i* b_k)
  double min_eig;
  bool faithful;
};

/// Gram matrix of φ on the subalgebra basis; faithful iff min_eig > tol.
Restriction restrict_state(const StateDensity& phi, const Subalgebra& s, double tol = kDefaultTol);

}  // namespace cstar
