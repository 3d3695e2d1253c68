#include "cstar/subalgebra.hpp"

#include <algorithm>
#include <cmath>

namespace cstar {

namespace {

constexpr double kOrthoTol = 1e-9;
constexpr double kClosureTol = 1e-8;
// Relative size below which a Gram–Schmidt residual is treated as already spanned.
constexpr double kSpanTol = 1e-8;

double real_inner(const Element& x, const Element& y) { return hs_inner(x, y).real(); }

// Modified Gram–Schmidt, two passes. Returns false if the candidate is already spanned.
bool add_complex(std::vector<Element>& basis, Element cand) {
  const double scale = hs_norm(cand);
  if (scale == 0.0) return false;
  cand *= Complex(1.0 / scale);
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) cand -= hs_inner(b, cand) * b;
  }
  const double r = hs_norm(cand);
  if (r <= kSpanTol) return false;
  cand *= Complex(1.0 / r);
  basis.push_back(std::move(cand));
  return true;
}

bool add_real(std::vector<Element>& basis, Element cand) {
  const double scale = hs_norm(cand);
  if (scale == 0.0) return false;
  cand *= Complex(1.0 / scale);
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) cand -= real_inner(b, cand) * b;
  }
  const double r = hs_norm(cand);
  if (r <= kSpanTol) return false;
  cand *= Complex(1.0 / r);
  basis.push_back(std::move(cand));
  return true;
}

Element project_onto(const Element& x, const std::vector<Element>& basis) {
  Element out = Element::zero(x.algebra());
  for (const auto& b : basis) out += hs_inner(b, x) * b;
  return out;
}

std::vector<Element> hermitian_basis_of(const std::vector<Element>& basis) {
  std::vector<Element> herm;
  for (const auto& b : basis) {
    const Element adj = b.adjoint();
    add_real(herm, 0.5 * (b + adj));
    add_real(herm, Complex(0.0, -0.5) * (b - adj));
  }
  return herm;
}

}  // namespace

Subalgebra::Subalgebra(BlockAlgebra algebra, std::vector<Element> basis, std::vector<Element> herm_basis,
                       bool contains_unit, std::string label)
    : algebra_(std::move(algebra)),
      basis_(std::move(basis)),
      herm_basis_(std::move(herm_basis)),
      contains_unit_(contains_unit),
      label_(std::move(label)) {}

Subalgebra Subalgebra::from_orthonormal_basis(const BlockAlgebra& algebra, std::vector<Element> basis,
                                              std::string label) {
  if (basis.empty()) throw ContractViolation("Subalgebra: empty basis");
  for (const auto& b : basis) require_same_algebra(algebra, b.algebra(), "Subalgebra");
  const auto k = basis.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const Complex g = hs_inner(basis[i], basis[j]);
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(g - expect) > kOrthoTol) throw ContractViolation("Subalgebra: basis is not orthonormal");
    }
  }
  for (const auto& b : basis) {
    const Element adj = b.adjoint();
    if (hs_norm(adj - project_onto(adj, basis)) > kClosureTol) {
      throw ContractViolation("Subalgebra: span is not closed under the adjoint");
    }
  }
  for (const auto& x : basis) {
    for (const auto& y : basis) {
      const Element xy = x * y;
      if (hs_norm(xy - project_onto(xy, basis)) > kClosureTol) {
        throw ContractViolation("Subalgebra: span is not closed under multiplication");
      }
    }
  }
  const Element one = Element::identity(algebra);
  const bool unital = hs_norm(one - project_onto(one, basis)) <= kClosureTol;
  if (!unital) throw ContractViolation("Subalgebra: the unit is not in the span");
  auto herm = hermitian_basis_of(basis);
  return Subalgebra(algebra, std::move(basis), std::move(herm), unital, std::move(label));
}

RVector Subalgebra::hermitian_coordinates(const Element& x) const {
  RVector c(static_cast<Eigen::Index>(herm_basis_.size()));
  for (std::size_t i = 0; i < herm_basis_.size(); ++i) c(static_cast<Eigen::Index>(i)) = real_inner(herm_basis_[i], x);
  return c;
}

Element Subalgebra::from_hermitian_coordinates(const RVector& c) const {
  Element out = Element::zero(algebra_);
  for (std::size_t i = 0; i < herm_basis_.size(); ++i) {
    const double w = c(static_cast<Eigen::Index>(i));
    for (int j = 0; j < out.num_blocks(); ++j) out.block(j) += w * herm_basis_[i].block(j);
  }
  return out;
}

Subalgebra build_subalgebra(const BlockAlgebra& algebra, std::span<const Element> generators) {
  if (generators.empty()) throw PreconditionError("build_subalgebra: at least one generator is required");
  std::vector<Element> basis;
  add_complex(basis, Element::identity(algebra));
  for (const auto& g : generators) {
    require_same_algebra(algebra, g.algebra(), "build_subalgebra");
    add_complex(basis, g);
    add_complex(basis, g.adjoint());
  }
  const auto max_dim = static_cast<std::size_t>(algebra.complex_dimension());
  // Each sweep multiplies every pair of current basis elements; stops when nothing new appears.
  for (std::size_t sweep = 0;; ++sweep) {
    if (sweep > max_dim) throw InternalError("build_subalgebra: closure did not stabilise");
    const std::size_t before = basis.size();
    for (std::size_t i = 0; i < before; ++i) {
      for (std::size_t j = 0; j < before; ++j) {
        add_complex(basis, basis[i] * basis[j]);
        if (basis.size() > max_dim) throw InternalError("build_subalgebra: closure exceeds the algebra dimension");
      }
    }
    if (basis.size() == before) break;
  }
  return Subalgebra::from_orthonormal_basis(algebra, std::move(basis), "generated");
}

std::optional<SubalgebraKind> parse_subalgebra_kind(std::string_view name) {
  if (name == "scalars") return SubalgebraKind::scalars;
  if (name == "diagonal") return SubalgebraKind::diagonal;
  if (name == "block_diagonal") return SubalgebraKind::block_diagonal;
  if (name == "constant_tuple") return SubalgebraKind::constant_tuple;
  if (name == "center") return SubalgebraKind::center;
  return std::nullopt;
}

std::string_view to_string(SubalgebraKind kind) {
  switch (kind) {
    case SubalgebraKind::scalars: return "scalars";
    case SubalgebraKind::diagonal: return "diagonal";
    case SubalgebraKind::block_diagonal: return "block_diagonal";
    case SubalgebraKind::constant_tuple: return "constant_tuple";
    case SubalgebraKind::center: return "center";
  }
  return "unknown";
}

Subalgebra standard_subalgebra(const BlockAlgebra& algebra, SubalgebraKind kind, const SubalgebraParams& params) {
  std::vector<Element> basis;
  switch (kind) {
    case SubalgebraKind::scalars: {
      Element one = Element::identity(algebra);
      one *= Complex(1.0 / std::sqrt(static_cast<double>(algebra.total_size())));
      basis.push_back(std::move(one));
      break;
    }
    case SubalgebraKind::diagonal: {
      for (const auto& u : matrix_units(algebra)) {
        if (u.row == u.col) basis.push_back(Element::matrix_unit(algebra, u));
      }
      break;
    }
    case SubalgebraKind::block_diagonal: {
      if (params.partition.empty()) throw UnsupportedError("block_diagonal: a partition is required");
      int sum = 0;
      for (int part : params.partition) {
        if (part < 1) throw UnsupportedError("block_diagonal: part sizes must be positive");
        sum += part;
      }
      for (int n : algebra.block_dims()) {
        if (n != sum) throw UnsupportedError("block_diagonal: partition does not match every block size");
      }
      for (const auto& u : matrix_units(algebra)) {
        int start = 0;
        for (int part : params.partition) {
          const bool row_in = u.row >= start && u.row < start + part;
          const bool col_in = u.col >= start && u.col < start + part;
          if (row_in && col_in) basis.push_back(Element::matrix_unit(algebra, u));
          start += part;
        }
      }
      break;
    }
    case SubalgebraKind::constant_tuple: {
      const int n = algebra.block_dim(0);
      for (int d : algebra.block_dims()) {
        if (d != n) throw UnsupportedError("constant_tuple: all blocks must have the same size");
      }
      const double scale = 1.0 / std::sqrt(static_cast<double>(algebra.num_blocks()));
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          Matrix e = Matrix::Zero(n, n);
          e(r, c) = scale;
          basis.push_back(Element::constant(algebra, e));
        }
      }
      break;
    }
    case SubalgebraKind::center: {
      for (int j = 0; j < algebra.num_blocks(); ++j) {
        Element p = Element::zero(algebra);
        const int n = algebra.block_dim(j);
        p.block(j) = Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n));
        basis.push_back(std::move(p));
      }
      break;
    }
  }
  return Subalgebra::from_orthonormal_basis(algebra, std::move(basis), std::string(to_string(kind)));
}

Subalgebra dilated_subalgebra(const Subalgebra& s) {
  std::vector<Element> basis;
  for (const auto& b : s.basis()) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) basis.push_back(corner_embed(b, r, c));
    }
  }
  return Subalgebra::from_orthonormal_basis(s.algebra().doubled(), std::move(basis), "M2(" + s.label() + ")");
}

Element hs_project(const Element& x, const Subalgebra& s) {
  require_same_algebra(x.algebra(), s.algebra(), "hs_project");
  return project_onto(x, s.basis());
}

double projection_residual(const Element& x, const Subalgebra& s) { return hs_norm(x - hs_project(x, s)); }

bool is_central(const Subalgebra& s) {
  const auto units = matrix_units(s.algebra());
  for (const auto& b : s.basis()) {
    for (const auto& u : units) {
      const Element e = Element::matrix_unit(s.algebra(), u);
      if (element_norm(commutator(b, e)) > kDefaultTol) return false;
    }
  }
  return true;
}

RetractionResult radial_retraction(const Element& a, const Element& f, const Subalgebra& s) {
  require_same_algebra(a.algebra(), s.algebra(), "radial_retraction");
  require_same_algebra(f.algebra(), s.algebra(), "radial_retraction");
  if (!is_central(s)) throw PreconditionError("radial_retraction: subalgebra is not central");
  if (projection_residual(f, s) > kClosureTol) throw PreconditionError("radial_retraction: F is not in the subalgebra");
  const double radius = element_norm(a);
  Element g = Element::zero(a.algebra());
  if (radius > 0.0) {
    for (int j = 0; j < f.num_blocks(); ++j) {
      const Complex lambda = f.block(j).trace() / static_cast<double>(f.algebra().block_dim(j));
      const double mag = std::abs(lambda);
      const double shrink = mag > radius ? radius / mag : 1.0;
      g.block(j) = Matrix::Identity(f.block(j).rows(), f.block(j).cols()) * (lambda * shrink);
    }
  }
  RetractionResult out{g, element_norm(g), element_norm(a - f), element_norm(a - g)};
  if (out.distance_after > out.distance_before + kDefaultTol) {
    throw InternalError("radial_retraction: retraction increased the distance to A");
  }
  return out;
}

Restriction restrict_state(const StateDensity& phi, const Subalgebra& s, double tol) {
  require_same_algebra(phi.algebra(), s.algebra(), "restrict_state");
  const auto k = static_cast<Eigen::Index>(s.basis().size());
  Matrix gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Element bi_adj = s.basis()[static_cast<std::size_t>(i)].adjoint();
    for (Eigen::Index j = 0; j < k; ++j) gram(i, j) = phi(bi_adj * s.basis()[static_cast<std::size_t>(j)]);
  }
  const double min_eig = linalg::hermitian_eigen(linalg::hermitian_part(gram)).values.minCoeff();
  return {gram, min_eig, min_eig > tol};
}

}  // namespace cstar
