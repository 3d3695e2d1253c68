#include "cstar/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cstar {

namespace {

using Blocks = std::vector<Matrix>;

double rdot(const Blocks& x, const Blocks& y) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += x[j].conjugate().cwiseProduct(y[j]).sum().real();
  return s;
}

void axpy(Blocks& y, double a, const Blocks& x) {
  for (std::size_t j = 0; j < y.size(); ++j) y[j] += a * x[j];
}

Blocks sub(const Blocks& x, const Blocks& y) {
  Blocks out = x;
  axpy(out, -1.0, y);
  return out;
}

Blocks add(const Blocks& x, const Blocks& y) {
  Blocks out = x;
  axpy(out, 1.0, y);
  return out;
}

double real_trace(const Blocks& x) {
  double t = 0.0;
  for (const auto& b : x) t += b.trace().real();
  return t;
}

Blocks psd_clip(const Blocks& x) {
  Blocks out;
  for (const auto& b : x) out.push_back(b.size() == 0 ? b : linalg::psd_part(linalg::hermitian_part(b)));
  return out;
}

double witness_norm(const Element& z) {
  if (!z.is_hermitian(1e-9)) throw ContractViolation("witness search needs a Hermitian element");
  return element_norm(z);
}

// Restriction of the problem to the ±‖Z‖ eigenspaces of each block.
struct Support {
  std::vector<Matrix> v;  // n_j × k_j isometries
  int total = 0;
};

Support extreme_support(const Element& z, double norm, double tol) {
  Support s;
  for (int j = 0; j < z.num_blocks(); ++j) {
    const auto eig = linalg::hermitian_eigen(z.block(j));
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
      if (std::abs(std::abs(eig.values(k)) - norm) <= tol * norm) keep.push_back(k);
    }
    Matrix v(z.block(j).rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(keep[c]);
    s.total += static_cast<int>(keep.size());
    s.v.push_back(std::move(v));
  }
  return s;
}

StateDensity lift(const Support& sup, const Blocks& r, const BlockAlgebra& alg) {
  std::vector<Matrix> rho;
  for (std::size_t j = 0; j < r.size(); ++j) {
    Matrix m = sup.v[j] * r[j] * sup.v[j].adjoint();
    rho.push_back(linalg::hermitian_part(m));
  }
  return StateDensity(alg, std::move(rho), 1e-7);
}

// Orthonormal basis of the span of g, keeping singular directions above rel·σ_max. Directions
// that are dependent up to round-off in Z would otherwise cut away every feasible density.
std::vector<Blocks> orthonormalize(const std::vector<Blocks>& g, double rel) {
  if (g.empty()) return {};
  Eigen::Index d = 0;
  for (const auto& b : g.front()) d += 2 * b.size();
  RMatrix m(static_cast<Eigen::Index>(g.size()), d);
  for (std::size_t i = 0; i < g.size(); ++i) {
    Eigen::Index k = 0;
    for (const auto& b : g[i])
      for (Eigen::Index e = 0; e < b.size(); ++e) {
        m(static_cast<Eigen::Index>(i), k++) = b(e).real();
        m(static_cast<Eigen::Index>(i), k++) = b(e).imag();
      }
  }
  const Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeThinV);
  const RVector& sv = svd.singularValues();
  std::vector<Blocks> q;
  for (Eigen::Index c = 0; c < sv.size(); ++c) {
    if (sv(c) <= rel * sv(0) || sv(c) <= 1e-300) break;
    Blocks x;
    Eigen::Index k = 0;
    for (const auto& b : g.front()) {
      Matrix y(b.rows(), b.cols());
      for (Eigen::Index e = 0; e < b.size(); ++e, k += 2) y(e) = Complex(svd.matrixV()(k, c), svd.matrixV()(k + 1, c));
      x.push_back(std::move(y));
    }
    q.push_back(std::move(x));
  }
  return q;
}

std::string to_text(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

StateDensity Witness::state() const {
  std::vector<Matrix> rho;
  for (int j = 0; j < algebra.num_blocks(); ++j) rho.push_back(Matrix::Zero(algebra.block_dim(j), algebra.block_dim(j)));
  for (int k = 0; k < size(); ++k) {
    const auto& ps = pure_states[static_cast<std::size_t>(k)];
    rho[static_cast<std::size_t>(ps.block)] += weights[static_cast<std::size_t>(k)] * ps.vector * ps.vector.adjoint();
  }
  return StateDensity(algebra, std::move(rho), 1e-7);
}

Verification verify_witness(const Element& z, const StateDensity& phi, const Subalgebra& s, double tol) {
  require_same_algebra(z.algebra(), phi.algebra(), "verify_witness");
  require_same_algebra(z.algebra(), s.algebra(), "verify_witness");
  const double norm = element_norm(z);
  Verification out;
  const double attain = std::abs(phi(z * z).real() - norm * norm);
  out.residuals["norm_attainment"] = norm > 0.0 ? attain / (norm * norm) : attain;
  double orth = 0.0;
  for (const auto& b : s.hermitian_basis()) orth = std::max(orth, std::abs(phi(z * b + b * z)));
  out.residuals["orthogonality"] = norm > 0.0 ? orth / norm : orth;
  out.ok = out.residuals["norm_attainment"] <= tol && out.residuals["orthogonality"] <= tol;
  return out;
}

WitnessSearch find_witness(const Element& z, const Subalgebra& s, const WitnessSearchOptions& opts) {
  require_same_algebra(z.algebra(), s.algebra(), "find_witness");
  const double norm = witness_norm(z);
  if (norm <= 0.0) throw DegenerateInput("find_witness: Z = 0");
  WitnessSearch out;
  double best_residual = std::numeric_limits<double>::infinity();

  for (double eig_tol = opts.eig_tol; eig_tol <= opts.max_eig_tol * (1.0 + 1e-9); eig_tol *= opts.widen_factor) {
    const Support sup = extreme_support(z, norm, eig_tol);
    if (sup.total == 0) continue;
    if (eig_tol > opts.eig_tol) {
      out.warnings.push_back("support widened to eig_tol " + to_text(eig_tol));
    }

    std::vector<Blocks> g;
    for (const auto& b : s.hermitian_basis()) {
      const Element zb = z * b + b * z;
      Blocks gi;
      for (std::size_t j = 0; j < sup.v.size(); ++j) {
        gi.push_back(linalg::hermitian_part(sup.v[j].adjoint() * zb.block(static_cast<int>(j)) * sup.v[j]));
      }
      g.push_back(std::move(gi));
    }
    const std::vector<Blocks> q = orthonormalize(g, 0.1 * opts.verify_tol);
    auto project_constraints = [&](Blocks x) {
      for (const auto& e : q) axpy(x, -rdot(e, x), e);
      return x;
    };
    auto constraint_residual = [&](const Blocks& r) {
      double m = 0.0;
      for (const auto& gi : g) m = std::max(m, std::abs(rdot(gi, r)));
      return m / norm;
    };

    Blocks id;
    for (const auto& v : sup.v) id.push_back(Matrix::Identity(v.cols(), v.cols()));
    const double dim = static_cast<double>(sup.total);
    auto project_trace = [&](Blocks x) {
      axpy(x, (1.0 - real_trace(x)) / dim, id);
      return x;
    };

    // Start from the normalized projection of the identity onto the constraint subspace.
    Blocks x = project_constraints(id);
    const double tr = real_trace(x);
    if (tr > 1e-12) {
      for (auto& b : x) b /= tr;
    } else {
      x = id;
      for (auto& b : x) b /= dim;
    }

    Blocks p1 = sub(x, x);
    Blocks p2 = p1;
    Blocks p3 = p1;
    double best_gap = std::numeric_limits<double>::infinity();
    int last_improvement = 0;
    for (int it = 0; it < opts.max_iterations; ++it) {
      ++out.iterations;
      Blocks y = psd_clip(add(x, p1));
      p1 = sub(add(x, p1), y);
      x = y;
      y = project_trace(add(x, p2));
      p2 = sub(add(x, p2), y);
      x = y;
      y = project_constraints(add(x, p3));
      p3 = sub(add(x, p3), y);
      x = y;

      Blocks cand = psd_clip(x);
      const double t = real_trace(cand);
      if (t <= 1e-300) continue;
      for (auto& b : cand) b /= t;
      const double gap = constraint_residual(cand);
      if (gap <= opts.verify_tol * 0.1 || (it % 50 == 49)) {
        const StateDensity phi = pinch_to_definite(lift(sup, cand, z.algebra()), z);
        const Verification ver = verify_witness(z, phi, s, opts.verify_tol);
        const double worst = std::max(ver.residuals.at("norm_attainment"), ver.residuals.at("orthogonality"));
        if (worst < best_residual) best_residual = worst;
        if (ver.ok && gap <= opts.verify_tol * 0.1) {
          out.state = phi;
          out.residual = worst;
          out.eig_tol_used = eig_tol;
          return out;
        }
      }
      if (gap < best_gap * (1.0 - 1e-6)) {
        best_gap = gap;
        last_improvement = it;
      } else if (it - last_improvement >= opts.patience) {
        break;
      }
    }
  }
  out.residual = best_residual;
  out.warnings.push_back("no witness found on the extreme eigenspaces");
  return out;
}

StateDensity pinch_to_definite(const StateDensity& phi, const Element& z, double classify) {
  require_same_algebra(phi.algebra(), z.algebra(), "pinch_to_definite");
  const double norm = witness_norm(z);
  if (norm <= 0.0) return phi;
  std::vector<Matrix> rho;
  for (int j = 0; j < z.num_blocks(); ++j) {
    const auto eig = linalg::hermitian_eigen(z.block(j));
    const Eigen::Index n = eig.values.size();
    Matrix out = Matrix::Zero(n, n);
    for (const int part : {1, -1, 0}) {
      Matrix p = Matrix::Zero(n, n);
      for (Eigen::Index k = 0; k < n; ++k) {
        const double d = std::abs(eig.values(k) - part * norm);
        const bool in = part != 0 ? d <= classify * norm
                                  : std::abs(std::abs(eig.values(k)) - norm) > classify * norm;
        if (in) p += eig.vectors.col(k) * eig.vectors.col(k).adjoint();
      }
      out += p * phi.block(j) * p;
    }
    rho.push_back(linalg::hermitian_part(out));
  }
  return StateDensity(phi.algebra(), std::move(rho), 1e-7);
}

Witness decompose_pure(const StateDensity& phi, const Element& z, double tol) {
  require_same_algebra(phi.algebra(), z.algebra(), "decompose_pure");
  const double norm = witness_norm(z);
  if (norm <= 0.0) throw DegenerateInput("decompose_pure: Z = 0");
  // Generous eigenspace classification; the definiteness residual below is the real test.
  constexpr double kClassify = 1e-3;
  Witness w{phi.algebra(), {}, {}, {}, {}};
  double off_mass = 0.0;
  double worst_def = 0.0;
  for (int j = 0; j < z.num_blocks(); ++j) {
    const auto eig = linalg::hermitian_eigen(z.block(j));
    const Eigen::Index n = eig.values.size();
    for (const int sign : {1, -1}) {
      std::vector<Eigen::Index> cols;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (std::abs(eig.values(k) - sign * norm) <= kClassify * norm) cols.push_back(k);
      }
      if (cols.empty()) continue;
      Matrix v(n, static_cast<Eigen::Index>(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c) v.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(cols[c]);
      // pinch ρ to this eigenspace; cross terms do not contribute to any constraint
      const Matrix r = linalg::hermitian_part(v.adjoint() * phi.block(j) * v);
      const auto reig = linalg::hermitian_eigen(r);
      for (Eigen::Index k = 0; k < reig.values.size(); ++k) {
        const double t = reig.values(k);
        if (t <= 1e-12) continue;
        CVector vec = v * reig.vectors.col(k);
        vec.normalize();
        const double def = std::abs((vec.adjoint() * z.block(j) * vec)(0, 0).real() - sign * norm) / norm;
        worst_def = std::max(worst_def, def);
        w.pure_states.push_back({j, vec});
        w.signs.push_back(sign);
        w.weights.push_back(t);
      }
    }
    double inside = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (std::abs(std::abs(eig.values(k)) - norm) <= kClassify * norm) {
        inside += (eig.vectors.col(k).adjoint() * phi.block(j) * eig.vectors.col(k))(0, 0).real();
      }
    }
    off_mass += std::max(0.0, phi.block(j).trace().real() - inside);
  }
  if (off_mass > tol) {
    throw DecompositionError("decompose_pure: state has mass " + to_text(off_mass) +
                             " off the extreme eigenspaces");
  }
  if (worst_def > tol) {
    throw DecompositionError("decompose_pure: spectral vector straddles eigenspaces (residual " +
                             to_text(worst_def) + ")");
  }
  double total = 0.0;
  for (const double t : w.weights) total += t;
  if (total <= 0.0) throw DecompositionError("decompose_pure: empty support");
  for (double& t : w.weights) t /= total;
  w.residuals["definiteness"] = worst_def;
  w.residuals["off_support_mass"] = off_mass;
  return w;
}

namespace {

// Rows: ε_j φ_j(B_i) for the Hermitian basis, then 1 for the normalization.
RMatrix constraint_columns(const Witness& w, const Subalgebra& s) {
  const auto& basis = s.hermitian_basis();
  RMatrix m(static_cast<Eigen::Index>(basis.size()) + 1, w.size());
  for (int k = 0; k < w.size(); ++k) {
    const auto& ps = w.pure_states[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const Matrix& b = basis[i].block(ps.block);
      m(static_cast<Eigen::Index>(i), k) =
          w.signs[static_cast<std::size_t>(k)] * (ps.vector.adjoint() * b * ps.vector)(0, 0).real();
    }
    m(static_cast<Eigen::Index>(basis.size()), k) = 1.0;
  }
  return m;
}

}  // namespace

Witness caratheodory_reduce(const Witness& w, const Subalgebra& s) {
  require_same_algebra(w.algebra, s.algebra(), "caratheodory_reduce");
  Witness cur = w;
  const RMatrix m0 = constraint_columns(w, s);
  const RVector target = m0 * Eigen::Map<const RVector>(w.weights.data(), w.size());
  for (;;) {
    const RMatrix m = constraint_columns(cur, s);
    const Eigen::JacobiSVD<RMatrix> svd(m, Eigen::ComputeFullV);
    const RVector& sv = svd.singularValues();
    const double scale = std::max(sv.size() > 0 ? sv(0) : 0.0, 1.0);
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
      if (sv(k) > 1e-10 * scale) ++rank;
    }
    if (rank >= cur.size()) break;
    RVector u = svd.matrixV().col(cur.size() - 1);
    if (u.maxCoeff() <= 0.0) u = -u;
    double alpha = std::numeric_limits<double>::infinity();
    for (int k = 0; k < cur.size(); ++k) {
      if (u(k) > 1e-14) alpha = std::min(alpha, cur.weights[static_cast<std::size_t>(k)] / u(k));
    }
    if (!std::isfinite(alpha)) throw ReductionError("caratheodory_reduce: no admissible step", w);
    Witness next{cur.algebra, {}, {}, {}, cur.residuals};
    std::vector<double> shifted(cur.weights);
    Eigen::Index drop = -1;
    double smallest = std::numeric_limits<double>::infinity();
    for (int k = 0; k < cur.size(); ++k) {
      shifted[static_cast<std::size_t>(k)] -= alpha * u(k);
      if (u(k) > 1e-14 && shifted[static_cast<std::size_t>(k)] < smallest) {
        smallest = shifted[static_cast<std::size_t>(k)];
        drop = k;
      }
    }
    for (int k = 0; k < cur.size(); ++k) {
      const double t = shifted[static_cast<std::size_t>(k)];
      if (k == drop || t <= 1e-15) continue;
      next.pure_states.push_back(cur.pure_states[static_cast<std::size_t>(k)]);
      next.signs.push_back(cur.signs[static_cast<std::size_t>(k)]);
      next.weights.push_back(t);
    }
    if (next.size() >= cur.size()) throw ReductionError("caratheodory_reduce: elimination made no progress", w);
    double total = 0.0;
    for (const double t : next.weights) total += t;
    for (double& t : next.weights) t /= total;
    const RVector now = constraint_columns(next, s) * Eigen::Map<const RVector>(next.weights.data(), next.size());
    if ((now - target).cwiseAbs().maxCoeff() > 1e-9) {
      throw ReductionError("caratheodory_reduce: numerical rank failure", w);
    }
    cur = std::move(next);
  }
  return cur;
}

Verification verify_pure_witness(const Witness& w, const Element& z, const Subalgebra& s, double tol) {
  require_same_algebra(w.algebra, z.algebra(), "verify_pure_witness");
  const double norm = element_norm(z);
  Verification out;
  double total = 0.0;
  double unit = 0.0;
  double def = 0.0;
  for (int k = 0; k < w.size(); ++k) {
    const auto& ps = w.pure_states[static_cast<std::size_t>(k)];
    total += w.weights[static_cast<std::size_t>(k)];
    if (w.weights[static_cast<std::size_t>(k)] < 0.0) total = std::numeric_limits<double>::infinity();
    unit = std::max(unit, std::abs(ps.vector.norm() - 1.0));
    const double val = (ps.vector.adjoint() * z.block(ps.block) * ps.vector)(0, 0).real();
    def = std::max(def, std::abs(val - w.signs[static_cast<std::size_t>(k)] * norm));
  }
  out.residuals["weight_sum"] = std::abs(total - 1.0);
  out.residuals["unit_vectors"] = unit;
  out.residuals["definiteness"] = norm > 0.0 ? def / norm : def;
  const RVector vals = constraint_columns(w, s) * Eigen::Map<const RVector>(w.weights.data(), w.size());
  const double orth = vals.size() > 1 ? vals.head(vals.size() - 1).cwiseAbs().maxCoeff() : 0.0;
  out.residuals["orthogonality"] = orth;
  out.ok = out.residuals["weight_sum"] <= 1e-10 && unit <= 1e-10 && out.residuals["definiteness"] <= tol &&
           orth <= tol;
  return out;
}

Uniqueness uniqueness_check(const Element& z, const StateDensity& phi, const Subalgebra& s) {
  require_same_algebra(z.algebra(), s.algebra(), "uniqueness_check");
  return restrict_state(phi, s, 1e-9).faithful ? Uniqueness::unique : Uniqueness::inconclusive;
}

HermitianFunctional witness_to_functional(const Witness& w) {
  std::vector<Matrix> repr;
  for (int j = 0; j < w.algebra.num_blocks(); ++j) repr.push_back(Matrix::Zero(w.algebra.block_dim(j), w.algebra.block_dim(j)));
  for (int k = 0; k < w.size(); ++k) {
    const auto& ps = w.pure_states[static_cast<std::size_t>(k)];
    repr[static_cast<std::size_t>(ps.block)] +=
        (w.signs[static_cast<std::size_t>(k)] * w.weights[static_cast<std::size_t>(k)]) * ps.vector * ps.vector.adjoint();
  }
  for (auto& r : repr) r = linalg::hermitian_part(r);
  return HermitianFunctional(w.algebra, std::move(repr));
}

HermitianFunctional witness_to_functional(const Witness& w, const Element& z, const Subalgebra& s, double tol) {
  if (!verify_pure_witness(w, z, s, tol).ok) throw ContractViolation("witness_to_functional: witness does not verify");
  return witness_to_functional(w);
}

Verification verify_functional_witness(const HermitianFunctional& psi, const Element& a, const Element& b,
                                       const Subalgebra& s, double tol) {
  require_same_algebra(psi.algebra(), a.algebra(), "verify_functional_witness");
  require_same_algebra(a.algebra(), s.algebra(), "verify_functional_witness");
  if (projection_residual(b, s) > std::max(tol, 1e-8)) {
    throw PreconditionError("verify_functional_witness: B is not in the subalgebra");
  }
  Verification out;
  out.residuals["norm_excess"] = std::max(0.0, functional_norm(psi) - 1.0);
  double orth = 0.0;
  for (const auto& e : s.basis()) orth = std::max(orth, std::abs(psi(e)));
  out.residuals["orthogonality"] = orth;
  out.residuals["attainment"] = std::abs(psi(a) - Complex(element_norm(a - b)));
  out.ok = out.residuals["norm_excess"] <= tol && orth <= tol && out.residuals["attainment"] <= tol;
  return out;
}

}  // namespace cstar
