#include "cstar/harness.hpp"
#include "support.hpp"

using namespace cstar;
using namespace cstar::testing;

TEST_CASE("block algebra shapes") {
  const BlockAlgebra a({2, 3});
  CHECK(a.num_blocks() == 2);
  CHECK(a.complex_dimension() == 13);
  CHECK(matrix_units(a).size() == 13);
  CHECK_THROWS_AS(BlockAlgebra({}), StructuralError);
  CHECK_THROWS_AS(BlockAlgebra({2, 0}), StructuralError);
}

TEST_CASE("element arithmetic") {
  const BlockAlgebra a({2, 3});
  Element x = Element::identity(a);
  CHECK(hs_norm(x * x - x) == doctest::Approx(0.0));
  Element y(a, {m2(1, Complex(0, 2), 3, 4), Matrix::Ones(3, 3)});
  Element z(a, {m2(0, 1, 1, 0), Matrix::Identity(3, 3) * 2.0});
  CHECK(hs_norm((y * z).adjoint() - z.adjoint() * y.adjoint()) < 1e-12);
  CHECK_THROWS_AS(Element(a, {m2(1, 0, 0, 1)}), StructuralError);
  CHECK_THROWS_AS(y + Element::identity(BlockAlgebra({2, 2})), StructuralError);
}

TEST_CASE("element norm") {
  CHECK(element_norm(Element::zero(BlockAlgebra({2, 2, 2}))) == 0.0);
  CHECK(element_norm(examples::badnear_z()) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(element_norm(examples::badnear_a()) == doctest::Approx(7.0).epsilon(1e-12));
}

TEST_CASE("functional norm") {
  const BlockAlgebra a = m2_algebra();
  CHECK(functional_norm(HermitianFunctional(a, {diag({1, 0})})) == doctest::Approx(1.0));
  CHECK(functional_norm(HermitianFunctional(a, {diag({0.5, -0.5})})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(HermitianFunctional(a, {m2(0, 1, 0, 0)}), ContractViolation);
  const HermitianFunctional psi = witness_to_functional(examples::badnear_witness());
  CHECK(functional_norm(psi) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hermitian dilation") {
  CHECK(element_norm(hermitian_dilation(single(m2(0, 2, 0, 0)))) == doctest::Approx(2.0));
  const Element z = examples::badnear_z();
  CHECK(element_norm(hermitian_dilation(z)) == doctest::Approx(element_norm(z)));
  CHECK(hermitian_dilation(single(m2(1, Complex(0, 3), 2, 0))).is_hermitian());
}

TEST_CASE("jordan decomposition") {
  const BlockAlgebra a = m2_algebra();
  const JordanDecomposition jd = jordan_decompose(HermitianFunctional(a, {diag({0.5, -0.5})}));
  CHECK((jd.plus.repr()[0] - diag({1, 0})).norm() < 1e-12);
  CHECK((jd.minus.repr()[0] - diag({0, 1})).norm() < 1e-12);

  const HermitianFunctional pos(a, {diag({0.25, 0.75})});
  const JordanDecomposition jp = jordan_decompose(pos);
  CHECK((jp.plus.repr()[0] - 2.0 * diag({0.25, 0.75})).norm() < 1e-12);
  CHECK(jp.minus.repr()[0].norm() < 1e-12);

  const JordanDecomposition jb = jordan_decompose(witness_to_functional(examples::badnear_witness()));
  const auto ps = examples::badnear_pure_states();
  const BlockAlgebra t = examples::triple_m2();
  const HermitianFunctional plus = (8.0 / 9) * StateDensity::vector_state(t, 0, ps[0].vector).functional() +
                                   (1.0 / 9) * StateDensity::vector_state(t, 1, ps[1].vector).functional();
  const HermitianFunctional minus = (4.0 / 9) * StateDensity::vector_state(t, 1, ps[2].vector).functional() +
                                    (5.0 / 9) * StateDensity::vector_state(t, 2, ps[4].vector).functional();
  for (int j = 0; j < 3; ++j) {
    CHECK((jb.plus.repr()[j] - plus.repr()[j]).norm() < 1e-12);
    CHECK((jb.minus.repr()[j] - minus.repr()[j]).norm() < 1e-12);
  }
  CHECK(jb.plus_state().real_value(Element::identity(t)) == doctest::Approx(1.0));
}

TEST_CASE("states") {
  const BlockAlgebra a({2, 3});
  const StateDensity tr = StateDensity::normalized_trace(a);
  CHECK(tr.real_value(Element::identity(a)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(StateDensity(a, {diag({1, 0}), Matrix(diag({0, 0, -0.5}))}), ContractViolation);
  CHECK_THROWS_AS(StateDensity(a, {diag({1, 0}), Matrix(diag({0, 0, 0.5}))}), ContractViolation);
}
