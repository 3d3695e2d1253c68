#include "cstar/algebra.hpp"

#include <cmath>
#include <string>

namespace cstar {

BlockAlgebra::BlockAlgebra(std::vector<int> block_dims) {
  if (block_dims.empty()) throw StructuralError("BlockAlgebra: at least one block is required");
  for (int n : block_dims) {
    if (n < 1) throw StructuralError("BlockAlgebra: block sizes must be positive");
  }
  dims_ = std::make_shared<const std::vector<int>>(std::move(block_dims));
}

int BlockAlgebra::complex_dimension() const {
  int d = 0;
  for (int n : *dims_) d += n * n;
  return d;
}

int BlockAlgebra::total_size() const {
  int d = 0;
  for (int n : *dims_) d += n;
  return d;
}

BlockAlgebra BlockAlgebra::doubled() const {
  std::vector<int> d;
  d.reserve(dims_->size());
  for (int n : *dims_) d.push_back(2 * n);
  return BlockAlgebra(std::move(d));
}

std::vector<MatrixUnitIndex> matrix_units(const BlockAlgebra& algebra) {
  std::vector<MatrixUnitIndex> out;
  out.reserve(static_cast<std::size_t>(algebra.complex_dimension()));
  for (int j = 0; j < algebra.num_blocks(); ++j) {
    const int n = algebra.block_dim(j);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) out.push_back({j, r, c});
    }
  }
  return out;
}

void require_same_algebra(const BlockAlgebra& a, const BlockAlgebra& b, const char* what) {
  if (!(a == b)) throw StructuralError(std::string(what) + ": operands belong to different algebras");
}

namespace {

void check_blocks(const BlockAlgebra& algebra, const std::vector<Matrix>& blocks, const char* what) {
  if (static_cast<int>(blocks.size()) != algebra.num_blocks()) {
    throw StructuralError(std::string(what) + ": expected " + std::to_string(algebra.num_blocks()) +
                          " blocks, got " + std::to_string(blocks.size()));
  }
  for (int j = 0; j < algebra.num_blocks(); ++j) {
    const auto& b = blocks[static_cast<std::size_t>(j)];
    const int n = algebra.block_dim(j);
    if (b.rows() != n || b.cols() != n) {
      throw StructuralError(std::string(what) + ": block " + std::to_string(j) + " must be " +
                            std::to_string(n) + "x" + std::to_string(n));
    }
  }
}

}  // namespace

Element::Element(BlockAlgebra algebra, std::vector<Matrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  check_blocks(algebra_, blocks_, "Element");
}

Element Element::zero(const BlockAlgebra& algebra) {
  std::vector<Matrix> b;
  for (int n : algebra.block_dims()) b.push_back(Matrix::Zero(n, n));
  return Element(algebra, std::move(b));
}

Element Element::identity(const BlockAlgebra& algebra) {
  std::vector<Matrix> b;
  for (int n : algebra.block_dims()) b.push_back(Matrix::Identity(n, n));
  return Element(algebra, std::move(b));
}

Element Element::matrix_unit(const BlockAlgebra& algebra, const MatrixUnitIndex& idx) {
  Element e = zero(algebra);
  e.block(idx.block)(idx.row, idx.col) = 1.0;
  return e;
}

Element Element::scalars(const BlockAlgebra& algebra, std::span<const Complex> per_block) {
  if (static_cast<int>(per_block.size()) != algebra.num_blocks()) {
    throw StructuralError("Element::scalars: one scalar per block is required");
  }
  Element e = identity(algebra);
  for (int j = 0; j < algebra.num_blocks(); ++j) e.block(j) *= per_block[static_cast<std::size_t>(j)];
  return e;
}

Element Element::constant(const BlockAlgebra& algebra, const Matrix& m) {
  std::vector<Matrix> b(static_cast<std::size_t>(algebra.num_blocks()), m);
  return Element(algebra, std::move(b));
}

Element Element::adjoint() const {
  Element out = *this;
  for (auto& b : out.blocks_) b.adjointInPlace();
  return out;
}

bool Element::is_hermitian(double tol) const {
  for (const auto& b : blocks_) {
    if (!linalg::is_hermitian(b, tol)) return false;
  }
  return true;
}

Element Element::hermitian_part() const {
  Element out = *this;
  for (auto& b : out.blocks_) b = linalg::hermitian_part(b);
  return out;
}

Element Element::inverse() const {
  Element out = *this;
  for (auto& b : out.blocks_) {
    Eigen::FullPivLU<Matrix> lu(b);
    if (!lu.isInvertible()) throw DegenerateInput("Element::inverse: singular block");
    b = lu.inverse();
  }
  return out;
}

Element& Element::operator+=(const Element& other) {
  require_same_algebra(algebra_, other.algebra_, "Element::operator+");
  for (std::size_t j = 0; j < blocks_.size(); ++j) blocks_[j] += other.blocks_[j];
  return *this;
}

Element& Element::operator-=(const Element& other) {
  require_same_algebra(algebra_, other.algebra_, "Element::operator-");
  for (std::size_t j = 0; j < blocks_.size(); ++j) blocks_[j] -= other.blocks_[j];
  return *this;
}

Element& Element::operator*=(Complex s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

Element operator*(const Element& a, const Element& b) {
  require_same_algebra(a.algebra_, b.algebra_, "Element::operator*");
  Element out = a;
  for (std::size_t j = 0; j < out.blocks_.size(); ++j) out.blocks_[j] = a.blocks_[j] * b.blocks_[j];
  return out;
}

double element_norm(const Element& x) {
  double m = 0.0;
  for (const auto& b : x.blocks()) m = std::max(m, linalg::operator_norm(b));
  return m;
}

Complex hs_inner(const Element& x, const Element& y) {
  require_same_algebra(x.algebra(), y.algebra(), "hs_inner");
  Complex s = 0.0;
  for (int j = 0; j < x.num_blocks(); ++j) s += x.block(j).conjugate().cwiseProduct(y.block(j)).sum();
  return s;
}

double hs_norm(const Element& x) {
  double s = 0.0;
  for (const auto& b : x.blocks()) s += b.squaredNorm();
  return std::sqrt(s);
}

Element commutator(const Element& x, const Element& y) { return x * y - y * x; }

Element hermitian_dilation(const Element& a) {
  const BlockAlgebra d = a.algebra().doubled();
  std::vector<Matrix> blocks;
  for (int j = 0; j < a.num_blocks(); ++j) {
    const int n = a.algebra().block_dim(j);
    Matrix m = Matrix::Zero(2 * n, 2 * n);
    m.topRightCorner(n, n) = a.block(j).adjoint();
    m.bottomLeftCorner(n, n) = a.block(j);
    blocks.push_back(std::move(m));
  }
  return Element(d, std::move(blocks));
}

Element corner_embed(const Element& x, int r, int c) {
  const BlockAlgebra d = x.algebra().doubled();
  Element out = Element::zero(d);
  for (int j = 0; j < x.num_blocks(); ++j) {
    const int n = x.algebra().block_dim(j);
    out.block(j).block(r * n, c * n, n, n) = x.block(j);
  }
  return out;
}

Element corner_extract(const Element& x2, const BlockAlgebra& base, int r, int c) {
  require_same_algebra(x2.algebra(), base.doubled(), "corner_extract");
  std::vector<Matrix> blocks;
  for (int j = 0; j < base.num_blocks(); ++j) {
    const int n = base.block_dim(j);
    blocks.emplace_back(x2.block(j).block(r * n, c * n, n, n));
  }
  return Element(base, std::move(blocks));
}

Functional::Functional(BlockAlgebra algebra, std::vector<Matrix> repr)
    : algebra_(std::move(algebra)), repr_(std::move(repr)) {
  check_blocks(algebra_, repr_, "Functional");
}

namespace {

Complex trace_pairing(const std::vector<Matrix>& w, const Element& c) {
  Complex s = 0.0;
  for (int j = 0; j < c.num_blocks(); ++j) {
    // trace(W C) = Σ_{pq} W_pq C_qp
    s += w[static_cast<std::size_t>(j)].cwiseProduct(c.block(j).transpose()).sum();
  }
  return s;
}

}  // namespace

Complex Functional::operator()(const Element& c) const {
  require_same_algebra(algebra_, c.algebra(), "Functional");
  return trace_pairing(repr_, c);
}

double Functional::norm() const {
  double s = 0.0;
  for (const auto& w : repr_) s += linalg::trace_norm(w);
  return s;
}

HermitianFunctional::HermitianFunctional(BlockAlgebra algebra, std::vector<Matrix> repr, double tol)
    : algebra_(std::move(algebra)), repr_(std::move(repr)) {
  check_blocks(algebra_, repr_, "HermitianFunctional");
  for (std::size_t j = 0; j < repr_.size(); ++j) {
    if (!linalg::is_hermitian(repr_[j], tol)) {
      throw ContractViolation("HermitianFunctional: repr block " + std::to_string(j) + " is not Hermitian");
    }
  }
}

Complex HermitianFunctional::operator()(const Element& c) const {
  require_same_algebra(algebra_, c.algebra(), "HermitianFunctional");
  return trace_pairing(repr_, c);
}

bool HermitianFunctional::is_positive(double tol) const {
  for (const auto& w : repr_) {
    if (linalg::hermitian_eigen(w).values.minCoeff() < -tol) return false;
  }
  return true;
}

HermitianFunctional& HermitianFunctional::operator+=(const HermitianFunctional& o) {
  require_same_algebra(algebra_, o.algebra_, "HermitianFunctional::operator+");
  for (std::size_t j = 0; j < repr_.size(); ++j) repr_[j] += o.repr_[j];
  return *this;
}

HermitianFunctional& HermitianFunctional::operator*=(double s) {
  for (auto& w : repr_) w *= s;
  return *this;
}

double functional_norm(const HermitianFunctional& psi) {
  double s = 0.0;
  for (const auto& w : psi.repr()) s += linalg::trace_norm(w);
  return s;
}

StateDensity::StateDensity(BlockAlgebra algebra, std::vector<Matrix> rho, double tol)
    : algebra_(std::move(algebra)), rho_(std::move(rho)) {
  check_blocks(algebra_, rho_, "StateDensity");
  double trace = 0.0;
  for (std::size_t j = 0; j < rho_.size(); ++j) {
    if (!linalg::is_hermitian(rho_[j], tol)) {
      throw ContractViolation("StateDensity: block " + std::to_string(j) + " is not Hermitian");
    }
    if (linalg::hermitian_eigen(rho_[j]).values.minCoeff() < -tol) {
      throw ContractViolation("StateDensity: block " + std::to_string(j) + " is not positive");
    }
    trace += rho_[j].trace().real();
  }
  if (std::abs(trace - 1.0) > tol) {
    throw ContractViolation("StateDensity: total trace is " + std::to_string(trace) + ", expected 1");
  }
}

StateDensity StateDensity::vector_state(const BlockAlgebra& algebra, int block, const CVector& v) {
  if (block < 0 || block >= algebra.num_blocks() || v.size() != algebra.block_dim(block)) {
    throw StructuralError("StateDensity::vector_state: vector does not fit the block");
  }
  std::vector<Matrix> rho;
  for (int n : algebra.block_dims()) rho.push_back(Matrix::Zero(n, n));
  rho[static_cast<std::size_t>(block)] = v * v.adjoint();
  return StateDensity(algebra, std::move(rho));
}

StateDensity StateDensity::normalized_trace(const BlockAlgebra& algebra) {
  const double total = algebra.total_size();
  std::vector<Matrix> rho;
  for (int n : algebra.block_dims()) rho.push_back(Matrix::Identity(n, n) / total);
  return StateDensity(algebra, std::move(rho));
}

Complex StateDensity::operator()(const Element& c) const {
  require_same_algebra(algebra_, c.algebra(), "StateDensity");
  return trace_pairing(rho_, c);
}

HermitianFunctional StateDensity::functional() const { return HermitianFunctional(algebra_, rho_); }

namespace {

StateDensity as_state(const HermitianFunctional& f, double tol) {
  return StateDensity(f.algebra(), f.repr(), tol);
}

}  // namespace

StateDensity JordanDecomposition::plus_state(double tol) const { return as_state(plus, tol); }
StateDensity JordanDecomposition::minus_state(double tol) const { return as_state(minus, tol); }

JordanDecomposition jordan_decompose(const HermitianFunctional& psi) {
  std::vector<Matrix> plus;
  std::vector<Matrix> minus;
  for (const auto& w : psi.repr()) {
    const auto eig = linalg::hermitian_eigen(w);
    const RVector pos = 2.0 * eig.values.cwiseMax(0.0);
    const RVector neg = 2.0 * (-eig.values).cwiseMax(0.0);
    plus.push_back(eig.vectors * pos.cast<Complex>().asDiagonal() * eig.vectors.adjoint());
    minus.push_back(eig.vectors * neg.cast<Complex>().asDiagonal() * eig.vectors.adjoint());
  }
  return {HermitianFunctional(psi.algebra(), std::move(plus)),
          HermitianFunctional(psi.algebra(), std::move(minus))};
}

}  // namespace cstar
