#pragma once

#include <memory>
#include <span>
#include <vector>

#include "cstar/error.hpp"
#include "cstar/linalg.hpp"

namespace cstar {

/// A finite-dimensional C*-algebra ⊕_j M_{n_j}(ℂ), described by its block sizes.
///
/// Copies share the underlying size list, so passing algebras by value is cheap.
class BlockAlgebra {
 public:
  explicit BlockAlgebra(std::vector<int> block_dims);

  const std::vector<int>& block_dims() const { return *dims_; }
  int num_blocks() const { return static_cast<int>(dims_->size()); }
  int block_dim(int j) const { return (*dims_)[static_cast<std::size_t>(j)]; }

  /// Σ n_j², the complex dimension of the algebra.
  int complex_dimension() const;
  /// Σ n_j, the size of the defining representation.
  int total_size() const;

  /// M_2 of this algebra, realised blockwise as ⊕_j M_{2 n_j}.
  BlockAlgebra doubled() const;

  friend bool operator==(const BlockAlgebra& a, const BlockAlgebra& b) {
    return a.dims_ == b.dims_ || *a.dims_ == *b.dims_;
  }

 private:
  std::shared_ptr<const std::vector<int>> dims_;
};

/// Position of a matrix unit E_pq inside block j.
struct MatrixUnitIndex {
  int block;
  int row;
  int col;
};

/// Enumerates all matrix units of the algebra, block by block, row-major.
std::vector<MatrixUnitIndex> matrix_units(const BlockAlgebra& algebra);

/// An element of a BlockAlgebra: one square complex matrix per block.
class Element {
 public:
  /// Throws StructuralError if the blocks do not conform to the algebra.
  Element(BlockAlgebra algebra, std::vector<Matrix> blocks);

  static Element zero(const BlockAlgebra& algebra);
  static Element identity(const BlockAlgebra& algebra);
  static Element matrix_unit(const BlockAlgebra& algebra, const MatrixUnitIndex& idx);
  /// The tuple (c_1·I, …, c_k·I).
  static Element scalars(const BlockAlgebra& algebra, std::span<const Complex> per_block);
  /// The same matrix repeated in every block (all blocks must share its size).
  static Element constant(const BlockAlgebra& algebra, const Matrix& m);

  const BlockAlgebra& algebra() const { return algebra_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(int j) const { return blocks_[static_cast<std::size_t>(j)]; }
  Matrix& block(int j) { return blocks_[static_cast<std::size_t>(j)]; }
  int num_blocks() const { return algebra_.num_blocks(); }

  Element adjoint() const;
  bool is_hermitian(double tol = kDefaultTol) const;
  /// (X + X*)/2.
  Element hermitian_part() const;
  /// Inverse blockwise; throws DegenerateInput for a singular block.
  Element inverse() const;

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(Complex s);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Complex(-1.0); }
  friend Element operator*(Complex s, Element a) { return a *= s; }
  friend Element operator*(Element a, Complex s) { return a *= s; }
  friend Element operator*(double s, Element a) { return a *= Complex(s); }
  friend Element operator*(const Element& a, const Element& b);

 private:
  BlockAlgebra algebra_;
  std::vector<Matrix> blocks_;
};

/// Throws StructuralError unless both elements live in the same algebra.
void require_same_algebra(const BlockAlgebra& a, const BlockAlgebra& b, const char* what);

/// C*-norm: max over blocks of the largest singular value.
double element_norm(const Element& x);

/// Σ_j trace(X_j* Y_j).
Complex hs_inner(const Element& x, const Element& y);
double hs_norm(const Element& x);

/// Commutator XY − YX.
Element commutator(const Element& x, const Element& y);

/// Blockwise [[0, A_j*], [A_j, 0]] in the doubled algebra.
Element hermitian_dilation(const Element& a);

/// Places X in the (r, c) corner of every block of M_2 of its algebra.
Element corner_embed(const Element& x, int r, int c);
/// Reads the (r, c) corner of an element of the doubled algebra.
Element corner_extract(const Element& x2, const BlockAlgebra& base, int r, int c);

/// A linear functional C ↦ Σ_j trace(W_j C_j) with arbitrary complex W_j.
class Functional {
 public:
  Functional(BlockAlgebra algebra, std::vector<Matrix> repr);

  const BlockAlgebra& algebra() const { return algebra_; }
  const std::vector<Matrix>& repr() const { return repr_; }
  Complex operator()(const Element& c) const;
  /// Σ_j trace norm of W_j; the dual of the operator norm.
  double norm() const;

 private:
  BlockAlgebra algebra_;
  std::vector<Matrix> repr_;
};

/// A Hermitian functional: every W_j is Hermitian, so ψ(C*) = conj(ψ(C)).
class HermitianFunctional {
 public:
  /// Throws ContractViolation for a non-Hermitian repr. Nothing is symmetrised.
  HermitianFunctional(BlockAlgebra algebra, std::vector<Matrix> repr, double tol = kDefaultTol);

  const BlockAlgebra& algebra() const { return algebra_; }
  const std::vector<Matrix>& repr() const { return repr_; }
  Complex operator()(const Element& c) const;
  /// Real value on a Hermitian argument.
  double real_value(const Element& c) const { return (*this)(c).real(); }
  Functional general() const { return Functional(algebra_, repr_); }
  bool is_positive(double tol = kDefaultTol) const;

  HermitianFunctional& operator+=(const HermitianFunctional& o);
  HermitianFunctional& operator*=(double s);
  friend HermitianFunctional operator+(HermitianFunctional a, const HermitianFunctional& b) {
    return a += b;
  }
  friend HermitianFunctional operator-(HermitianFunctional a, const HermitianFunctional& b) {
    return a += -1.0 * b;
  }
  friend HermitianFunctional operator*(double s, HermitianFunctional a) { return a *= s; }

 private:
  BlockAlgebra algebra_;
  std::vector<Matrix> repr_;
};

double functional_norm(const HermitianFunctional& psi);

/// A state φ(C) = Σ_j trace(ρ_j C_j) with ρ_j ⪰ 0 and Σ_j trace ρ_j = 1.
class StateDensity {
 public:
  /// Throws ContractViolation unless every ρ_j is Hermitian with min eigenvalue ≥ −tol
  /// and the total trace is 1 within tol.
  StateDensity(BlockAlgebra algebra, std::vector<Matrix> rho, double tol = kDefaultTol);

  /// Vector state C ↦ ⟨C_j v, v⟩ for a unit vector v in block j.
  static StateDensity vector_state(const BlockAlgebra& algebra, int block, const CVector& v);
  /// C ↦ Σ_j trace(C_j) / Σ_j n_j.
  static StateDensity normalized_trace(const BlockAlgebra& algebra);

  const BlockAlgebra& algebra() const { return algebra_; }
  const std::vector<Matrix>& rho() const { return rho_; }
  const Matrix& block(int j) const { return rho_[static_cast<std::size_t>(j)]; }
  Complex operator()(const Element& c) const;
  double real_value(const Element& c) const { return (*this)(c).real(); }
  HermitianFunctional functional() const;

 private:
  BlockAlgebra algebra_;
  std::vector<Matrix> rho_;
};

/// ψ = (ψ⁺ − ψ⁻)/2 with ψ± positive and orthogonal (‖ψ⁺‖ + ‖ψ⁻‖ = 2‖ψ‖).
struct JordanDecomposition {
  HermitianFunctional plus;
  HermitianFunctional minus;

  /// Both parts as states; requires each to have unit trace within tol.
  StateDensity plus_state(double tol = 1e-8) const;
  StateDensity minus_state(double tol = 1e-8) const;
};

/// Blockwise spectral split W_j = W_j⁺ − W_j⁻, scaled by 2.
JordanDecomposition jordan_decompose(const HermitianFunctional& psi);

}  // namespace cstar
