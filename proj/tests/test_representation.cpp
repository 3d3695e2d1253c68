#include "cstar/harness.hpp"
#include "cstar/random.hpp"
#include "cstar/representation.hpp"
#include "cstar/solver.hpp"
#include "support.hpp"

using namespace cstar;
using namespace cstar::testing;

namespace {

Subalgebra diagonal2() { return standard_subalgebra(m2_algebra(), SubalgebraKind::diagonal); }

StateDensity flip_witness() {
  const CVector vp = vec({1, 1});
  const CVector vm = vec({1, -1});
  return StateDensity(m2_algebra(), {Matrix(0.5 * vp * vp.adjoint() + 0.5 * vm * vm.adjoint())});
}

double max_repro_error(const Representation& rep, const Functional& f, const BlockAlgebra& a, int samples, Rng& rng) {
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Element c = random_element(a, rng);
    const CVector eta = rep.eta ? *rep.eta : rep.xi;
    const Complex got = eta.dot(rep.pi(c) * rep.xi);
    worst = std::max(worst, std::abs(got - f(c)));
  }
  return worst;
}

}  // namespace

TEST_CASE("gns dimensions") {
  const BlockAlgebra a = m2_algebra();
  const Representation e1 = gns(StateDensity::vector_state(a, 0, vec({1, 0})));
  CHECK(e1.dim == 2);
  CHECK(e1.xi.norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(e1.homomorphism_defect() < 1e-8);
  const Representation tr = gns(StateDensity::normalized_trace(a));
  CHECK(tr.dim == 4);

  Rng rng(1);
  const StateDensity phi = examples::badnear_witness().state();
  const Representation rep = gns(phi);
  CHECK(rep.dim == 8);  // ranks 1, 2, 1 times block size 2
  CHECK(rep.homomorphism_defect() < 1e-8);
  CHECK(max_repro_error(rep, phi.functional().general(), phi.algebra(), 20, rng) < 1e-9);
  CHECK(reproduction_error(rep, phi.functional().general()) < 1e-9);
}

TEST_CASE("commutator unitary: flip against the diagonal") {
  const Element x = single(flip());
  const CommutatorSeminorm cs = commutator_unitary(x, diagonal2(), flip_witness());
  const Matrix& u = cs.unitary;
  CHECK((u * u - Matrix::Identity(u.rows(), u.cols())).norm() < 1e-8);
  CHECK((u - u.adjoint()).norm() < 1e-8);
  CHECK(commutator_seminorm_eval(cs, x) == doctest::Approx(1.0).epsilon(1e-8));
  const Subalgebra d = diagonal2();
  for (const Element& b : d.basis()) CHECK(commutator_seminorm_eval(cs, b) < 1e-9);
  CHECK(commutator_seminorm_eval(cs, Element::identity(m2_algebra())) < 1e-12);
  CHECK_THROWS_AS(commutator_unitary(x, d, StateDensity::vector_state(m2_algebra(), 0, vec({1, 1}))), PreconditionError);
}

TEST_CASE("commutator seminorm in the defining representation") {
  // U = diag(1, −1) on C^2 with π the identity map of M_2: ½‖[U, X]‖ = 1.
  const Matrix u = diag({1, -1});
  const Matrix c = u * flip() - flip() * u;
  CHECK(0.5 * linalg::operator_norm(c) == doctest::Approx(1.0));
}

TEST_CASE("commutator unitary: badnear") {
  const Subalgebra ct = examples::constant_tuples();
  const Element z = examples::badnear_z();
  const CommutatorSeminorm cs = commutator_unitary(z, ct, examples::badnear_witness().state());
  CHECK(std::abs(commutator_seminorm_eval(cs, z) - 5.0) < 1e-5);
  for (const Element& b : ct.basis()) CHECK(commutator_seminorm_eval(cs, b) < 1e-9);

  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const Element c = random_element(z.algebra(), rng);
    CHECK(commutator_seminorm_eval(cs, c) <= quotient_seminorm(c, ct).radius + 1e-5);
  }
}

TEST_CASE("derivation seminorm") {
  const Subalgebra ct = examples::constant_tuples();
  const Element z = examples::badnear_z();
  const CommutatorSeminorm cs = commutator_unitary(z, ct, examples::badnear_witness().state());
  const DerivationSeminorm d(cs);
  for (const Element& b : ct.basis()) CHECK(d(b) < 1e-9);
  Rng rng(4);
  for (int t = 0; t < 5; ++t) {
    const Element a = random_element(z.algebra(), rng);
    const Element c = random_element(z.algebra(), rng);
    CHECK(d.leibniz_defect(a, c) < 1e-8);
    CHECK(d.adjoint_defect(c) < 1e-8);
    CHECK(d(c) == doctest::Approx(commutator_seminorm_eval(cs, c)).epsilon(1e-10));
  }
}

TEST_CASE("functional representations") {
  const BlockAlgebra a = m2_algebra();
  const HermitianFunctional pure = StateDensity::vector_state(a, 0, vec({1, 2})).functional();
  const Representation rp = functional_rep(pure);
  REQUIRE(rp.eta.has_value());
  CHECK((*rp.eta - rp.xi).norm() < 1e-8);
  CHECK(reproduction_error(rp, pure.general()) < 1e-9);

  const HermitianFunctional half(a, {diag({0.5, -0.5})});
  for (const auto route : {FunctionalRoute::jordan, FunctionalRoute::doubled}) {
    const Representation r = functional_rep(half, route);
    CHECK(reproduction_error(r, half.general()) < 1e-9);
    CHECK(r.xi.norm() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(r.eta->norm() == doctest::Approx(1.0).epsilon(1e-8));
  }

  Rng rng(8);
  const HermitianFunctional psi = witness_to_functional(examples::badnear_witness());
  const Representation rb = functional_rep(psi);
  CHECK(max_repro_error(rb, psi.general(), psi.algebra(), 20, rng) < 1e-8);

  std::vector<Matrix> w{m2(Complex(0.1, 0.2), 0.3, Complex(0, -0.4), 0.2), m2(0.1, 0, 0.5, Complex(-0.2, 0.1))};
  double n = 0;
  for (const auto& m : w) n += linalg::trace_norm(m);
  for (auto& m : w) m /= n;
  const Functional general(BlockAlgebra({2, 2}), w);
  const Representation rg = functional_rep(general);
  CHECK(reproduction_error(rg, general) < 1e-8);
  CHECK(rg.xi.norm() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(rg.eta->norm() == doctest::Approx(1.0).epsilon(1e-8));

  CHECK_THROWS_AS(functional_rep(2.0 * half), PreconditionError);
}

TEST_CASE("commutator unitary ignores near-null directions of the witness") {
  const BlockAlgebra t = examples::triple_m2();
  const Subalgebra ct = examples::constant_tuples();
  const Element z(t, {diag({-1, 0.5}), diag({0.3, 0.2}), diag({1, 0.5})});
  const CVector v = vec({1, 0});
  const CVector w = vec({1, 1e-10});
  const StateDensity phi(t, {Matrix(0.5 * v * v.adjoint()), Matrix::Zero(2, 2), Matrix(0.5 * w * w.adjoint())});
  REQUIRE(verify_witness(z, phi, ct).ok);
  const CommutatorSeminorm cs = commutator_unitary(z, ct, phi);
  CHECK(commutator_seminorm_eval(cs, z) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("pinching keeps a witness and removes cross terms") {
  const Element z = single(diag({1, -1}));
  const Subalgebra scalars = standard_subalgebra(m2_algebra(), SubalgebraKind::scalars);
  const StateDensity phi = StateDensity::vector_state(m2_algebra(), 0, vec({1, 1}));
  CHECK(verify_witness(z, phi, scalars).ok);
  const StateDensity p = pinch_to_definite(phi, z);
  CHECK((p.block(0) - diag({0.5, 0.5})).norm() < 1e-12);
  CHECK(verify_witness(z, p, scalars).ok);
}
