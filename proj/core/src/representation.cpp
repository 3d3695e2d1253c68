#include "cstar/representation.hpp"

#include <cmath>

#include "cstar/certificate.hpp"

namespace cstar {

namespace {

// Offsets of each block inside the matrix-unit coordinate vector.
std::vector<Eigen::Index> block_offsets(const BlockAlgebra& alg) {
  std::vector<Eigen::Index> off;
  Eigen::Index o = 0;
  for (int j = 0; j < alg.num_blocks(); ++j) {
    off.push_back(o);
    o += static_cast<Eigen::Index>(alg.block_dim(j)) * alg.block_dim(j);
  }
  return off;
}

CVector coordinates(const Element& x) {
  CVector v(x.algebra().complex_dimension());
  Eigen::Index k = 0;
  for (int j = 0; j < x.num_blocks(); ++j)
    for (Eigen::Index r = 0; r < x.block(j).rows(); ++r)
      for (Eigen::Index c = 0; c < x.block(j).cols(); ++c) v(k++) = x.block(j)(r, c);
  return v;
}

// Left multiplication by C on matrix-unit coordinates.
Matrix left_multiplication(const Element& c) {
  const BlockAlgebra& alg = c.algebra();
  const auto off = block_offsets(alg);
  const Eigen::Index d = alg.complex_dimension();
  Matrix l = Matrix::Zero(d, d);
  for (int j = 0; j < alg.num_blocks(); ++j) {
    const int n = alg.block_dim(j);
    // C E_{rc} = Σ_q C_{qr} E_{qc}
    for (int r = 0; r < n; ++r)
      for (int col = 0; col < n; ++col)
        for (int q = 0; q < n; ++q) l(off[static_cast<std::size_t>(j)] + q * n + col, off[static_cast<std::size_t>(j)] + r * n + col) = c.block(j)(q, r);
  }
  return l;
}

// Orthonormal basis of the column span, dropping directions below rel·σ_max.
Matrix range_basis(const Matrix& m, double rel) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  const Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const RVector& sv = svd.singularValues();
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > rel * std::max(sv(0), 1e-300)) ++r;
  return svd.matrixU().leftCols(r);
}

Representation restrict(const Representation& rep, const Matrix& q) {
  Representation out{rep.source, static_cast<int>(q.cols()), {}, q.adjoint() * rep.xi, std::nullopt};
  for (const auto& m : rep.unit_images) out.unit_images.push_back(q.adjoint() * m * q);
  if (rep.eta) out.eta = q.adjoint() * *rep.eta;
  return out;
}

// Restriction to the cyclic subspace span{π(e)ξ}.
Representation cyclic_restriction(const Representation& rep) {
  Matrix vecs(rep.dim, static_cast<Eigen::Index>(rep.unit_images.size()));
  for (std::size_t k = 0; k < rep.unit_images.size(); ++k) vecs.col(static_cast<Eigen::Index>(k)) = rep.unit_images[k] * rep.xi;
  return restrict(rep, range_basis(vecs, 1e-10));
}

Representation direct_sum(const Representation& a, const Representation& b) {
  const int n = a.dim + b.dim;
  Representation out{a.source, n, {}, CVector::Zero(n), std::nullopt};
  for (std::size_t k = 0; k < a.unit_images.size(); ++k) {
    Matrix m = Matrix::Zero(n, n);
    m.topLeftCorner(a.dim, a.dim) = a.unit_images[k];
    m.bottomRightCorner(b.dim, b.dim) = b.unit_images[k];
    out.unit_images.push_back(std::move(m));
  }
  return out;
}

void require_unit_norm(double norm) {
  if (std::abs(norm - 1.0) > 1e-8) throw PreconditionError("functional_rep: functional must have norm 1");
}

StateDensity normalized(const HermitianFunctional& f) {
  double t = 0.0;
  for (const auto& w : f.repr()) t += w.trace().real();
  std::vector<Matrix> rho;
  for (const auto& w : f.repr()) rho.push_back(w / t);
  return StateDensity(f.algebra(), std::move(rho), 1e-8);
}

double positive_mass(const HermitianFunctional& f) {
  double t = 0.0;
  for (const auto& w : f.repr()) t += w.trace().real();
  return t;
}

}  // namespace

Matrix Representation::pi(const Element& c) const {
  require_same_algebra(source, c.algebra(), "Representation::pi");
  Matrix out = Matrix::Zero(dim, dim);
  const CVector x = coordinates(c);
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    if (x(k) != Complex(0.0)) out += x(k) * unit_images[static_cast<std::size_t>(k)];
  }
  return out;
}

double Representation::homomorphism_defect() const {
  const auto units = matrix_units(source);
  double worst = (pi(Element::identity(source)) - Matrix::Identity(dim, dim)).norm();
  for (std::size_t a = 0; a < units.size(); ++a) {
    const Element ea = Element::matrix_unit(source, units[a]);
    worst = std::max(worst, (pi(ea.adjoint()) - unit_images[a].adjoint()).norm());
    for (std::size_t b = 0; b < units.size(); ++b) {
      const Element eb = Element::matrix_unit(source, units[b]);
      worst = std::max(worst, (pi(ea * eb) - unit_images[a] * unit_images[b]).norm());
    }
  }
  return worst;
}

Representation gns(const StateDensity& phi) {
  const BlockAlgebra& alg = phi.algebra();
  const auto units = matrix_units(alg);
  const auto d = static_cast<Eigen::Index>(units.size());
  std::vector<Element> e;
  for (const auto& u : units) e.push_back(Element::matrix_unit(alg, u));
  Matrix gram(d, d);
  for (Eigen::Index k = 0; k < d; ++k)
    for (Eigen::Index l = 0; l < d; ++l) gram(k, l) = phi(e[static_cast<std::size_t>(k)].adjoint() * e[static_cast<std::size_t>(l)]);
  const auto eig = linalg::hermitian_eigen(linalg::hermitian_part(gram));
  const double top = std::max(eig.values.maxCoeff(), 0.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < d; ++k) {
    if (eig.values(k) > 1e-12 * top) keep.push_back(k);
  }
  const auto r = static_cast<Eigen::Index>(keep.size());
  // to_hilbert = Λ^{1/2}U*, from_hilbert = UΛ^{-1/2}
  Matrix to_hilbert(r, d);
  Matrix from_hilbert(d, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const double lam = eig.values(keep[static_cast<std::size_t>(i)]);
    const CVector u = eig.vectors.col(keep[static_cast<std::size_t>(i)]);
    to_hilbert.row(i) = std::sqrt(lam) * u.adjoint();
    from_hilbert.col(i) = u / std::sqrt(lam);
  }
  Representation rep{alg, static_cast<int>(r), {}, to_hilbert * coordinates(Element::identity(alg)), std::nullopt};
  for (const auto& x : e) rep.unit_images.push_back(to_hilbert * left_multiplication(x) * from_hilbert);
  return rep;
}

double reproduction_error(const Representation& rep, const Functional& psi) {
  require_same_algebra(rep.source, psi.algebra(), "reproduction_error");
  const CVector& eta = rep.eta ? *rep.eta : rep.xi;
  double worst = 0.0;
  for (const auto& u : matrix_units(rep.source)) {
    const Element e = Element::matrix_unit(rep.source, u);
    const Complex v = eta.dot(rep.pi(e) * rep.xi);  // ⟨π(e)ξ, η⟩
    worst = std::max(worst, std::abs(v - psi(e)));
  }
  return worst;
}

CommutatorSeminorm commutator_unitary(const Element& z, const Subalgebra& s, const StateDensity& phi) {
  if (!verify_witness(z, phi, s, 1e-5).ok) {
    throw PreconditionError("commutator_unitary: state is not a witness for Z");
  }
  Representation rep = gns(pinch_to_definite(phi, z));
  Matrix vecs(rep.dim, static_cast<Eigen::Index>(s.basis().size()));
  for (std::size_t k = 0; k < s.basis().size(); ++k) vecs.col(static_cast<Eigen::Index>(k)) = rep.pi(s.basis()[k]) * rep.xi;
  // the witness is only as accurate as the solver, so near-null directions are noise
  const Matrix q = range_basis(vecs, 1e-6);
  const Matrix u = 2.0 * q * q.adjoint() - Matrix::Identity(rep.dim, rep.dim);
  return {std::move(rep), u};
}

double commutator_seminorm_eval(const CommutatorSeminorm& cs, const Element& c) {
  const Matrix p = cs.rep.pi(c);
  return 0.5 * linalg::operator_norm(cs.unitary * p - p * cs.unitary);
}

Matrix DerivationSeminorm::delta(const Element& c) const {
  const Matrix v = Complex(0.0, 1.0) * cs_.unitary;
  const Matrix p = cs_.rep.pi(c);
  return 0.5 * (v * p - p * v);
}

double DerivationSeminorm::operator()(const Element& c) const { return linalg::operator_norm(delta(c)); }

double DerivationSeminorm::leibniz_defect(const Element& a, const Element& c) const {
  const Matrix lhs = delta(a * c);
  const Matrix rhs = delta(a) * cs_.rep.pi(c) + cs_.rep.pi(a) * delta(c);
  return linalg::operator_norm(lhs - rhs);
}

double DerivationSeminorm::adjoint_defect(const Element& c) const {
  return linalg::operator_norm(delta(c.adjoint()) - delta(c).adjoint());
}

Representation functional_rep(const Functional& psi) {
  require_unit_norm(psi.norm());
  const BlockAlgebra& alg = psi.algebra();
  const BlockAlgebra big = alg.doubled();
  // ψ₂([[A, C], [B, D]]) = ½(ψ(B) + conj ψ(C*)), represented by ½[[0, W], [W*, 0]]
  std::vector<Matrix> w2;
  for (int j = 0; j < alg.num_blocks(); ++j) {
    const int n = alg.block_dim(j);
    const Matrix& w = psi.repr()[static_cast<std::size_t>(j)];
    Matrix m = Matrix::Zero(2 * n, 2 * n);
    m.topRightCorner(n, n) = 0.5 * w;
    m.bottomLeftCorner(n, n) = 0.5 * w.adjoint();
    w2.push_back(std::move(m));
  }
  const JordanDecomposition jd = jordan_decompose(HermitianFunctional(big, std::move(w2)));
  const Representation rp = gns(jd.plus_state());
  const Representation rm = gns(jd.minus_state());
  Representation two = direct_sum(rp, rm);
  CVector xi2(two.dim);
  CVector eta2(two.dim);
  xi2 << rp.xi, rm.xi;
  eta2 << rp.xi, -rm.xi;
  xi2 /= std::sqrt(2.0);
  eta2 /= std::sqrt(2.0);

  // Compress by P = π₂(E₁₁ corner); C acts as π₂(diag(C, 0)).
  Element e11 = Element::zero(big);
  Element flip = Element::zero(big);
  for (int j = 0; j < alg.num_blocks(); ++j) {
    const int n = alg.block_dim(j);
    e11.block(j).topLeftCorner(n, n) = Matrix::Identity(n, n);
    flip.block(j).topRightCorner(n, n) = Matrix::Identity(n, n);
    flip.block(j).bottomLeftCorner(n, n) = Matrix::Identity(n, n);
  }
  const Matrix p = two.pi(e11);
  const Matrix q = range_basis(p, 1e-10);
  Representation out{alg, static_cast<int>(q.cols()), {}, std::sqrt(2.0) * q.adjoint() * (p * xi2), std::nullopt};
  out.eta = std::sqrt(2.0) * q.adjoint() * (p * (two.pi(flip) * eta2));
  for (const auto& u : matrix_units(alg)) {
    out.unit_images.push_back(q.adjoint() * two.pi(corner_embed(Element::matrix_unit(alg, u), 0, 0)) * q);
  }
  return cyclic_restriction(out);
}

Representation functional_rep(const HermitianFunctional& psi, FunctionalRoute route) {
  if (route == FunctionalRoute::doubled) return functional_rep(psi.general());
  require_unit_norm(functional_norm(psi));
  const JordanDecomposition jd = jordan_decompose(psi);
  // ψ = a·φ⁺ − b·φ⁻ with states φ± and a + b = 1
  const double a = 0.5 * positive_mass(jd.plus);
  const double b = 0.5 * positive_mass(jd.minus);
  std::optional<Representation> rp;
  std::optional<Representation> rm;
  if (a > 1e-14) rp = gns(normalized(jd.plus));
  if (b > 1e-14) rm = gns(normalized(jd.minus));
  if (rp && !rm) {
    rp->eta = rp->xi;
    return *rp;
  }
  if (rm && !rp) {
    rm->eta = -rm->xi;
    return *rm;
  }
  Representation two = direct_sum(*rp, *rm);
  two.xi << std::sqrt(a) * rp->xi, std::sqrt(b) * rm->xi;
  CVector eta(two.dim);
  eta << std::sqrt(a) * rp->xi, -std::sqrt(b) * rm->xi;
  two.eta = eta;
  return cyclic_restriction(two);
}

}  // namespace cstar
