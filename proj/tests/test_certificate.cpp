#include "cstar/harness.hpp"
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

}  // namespace

TEST_CASE("find_witness: flip against the diagonal") {
  const WitnessSearch w = find_witness(single(flip()), diagonal2());
  REQUIRE(w.feasible());
  CHECK(verify_witness(single(flip()), *w.state, diagonal2()).ok);
  CHECK((w.state->block(0) - flip_witness().block(0)).norm() < 1e-5);
}

TEST_CASE("find_witness: symmetric spectrum against scalars") {
  const Element z = single(diag({2, -2}));
  const WitnessSearch w = find_witness(z, standard_subalgebra(m2_algebra(), SubalgebraKind::scalars));
  REQUIRE(w.feasible());
  CHECK((w.state->block(0) - diag({0.5, 0.5})).norm() < 1e-5);
}

TEST_CASE("find_witness: badnear") {
  const WitnessSearch w = find_witness(examples::badnear_z(), examples::constant_tuples());
  REQUIRE(w.feasible());
  CHECK(verify_witness(examples::badnear_z(), *w.state, examples::constant_tuples()).ok);
}

TEST_CASE("find_witness: non-minimal element") {
  const WitnessSearch w = find_witness(single(diag({3, -1})), standard_subalgebra(m2_algebra(), SubalgebraKind::scalars));
  CHECK_FALSE(w.feasible());
}

TEST_CASE("verify_witness") {
  const Element z = examples::badnear_z();
  const Verification v = verify_witness(z, examples::badnear_witness().state(), examples::constant_tuples());
  CHECK(v.ok);
  for (const auto& [name, r] : v.residuals) CHECK(r <= 1e-12);

  const auto exact = verify_witness_exact(z, examples::badnear_witness().state(), examples::constant_tuples());
  REQUIRE(exact.has_value());
  CHECK(exact->exact_zero);
  CHECK(exact->norm_attainment == "0");

  const Element traceless(examples::triple_m2(), {diag({5, -5}), diag({1, -1}), diag({0, 0})});
  const Verification tr = verify_witness(traceless, StateDensity::normalized_trace(examples::triple_m2()), examples::constant_tuples());
  CHECK_FALSE(tr.ok);
  CHECK(tr.residuals.at("norm_attainment") > 1e-3);

  const Verification half = verify_witness(single(flip()), StateDensity::vector_state(m2_algebra(), 0, vec({1, 1})), diagonal2());
  CHECK_FALSE(half.ok);
  CHECK(half.residuals.at("norm_attainment") < 1e-12);
  CHECK(half.residuals.at("orthogonality") > 0.5);
}

TEST_CASE("decompose_pure") {
  const Witness w2 = decompose_pure(flip_witness(), single(flip()));
  REQUIRE(w2.size() == 2);
  CHECK(w2.signs[0] * w2.signs[1] == -1);
  CHECK(w2.weights[0] == doctest::Approx(0.5));
  CHECK(w2.weights[1] == doctest::Approx(0.5));

  const Witness b = decompose_pure(examples::badnear_witness().state(), examples::badnear_z());
  REQUIRE(b.size() == 4);
  std::vector<std::pair<double, int>> got;
  for (int k = 0; k < 4; ++k) got.emplace_back(b.weights[k] * 18, b.signs[k]);
  std::sort(got.begin(), got.end());
  CHECK(got[0].first == doctest::Approx(1.0));
  CHECK(got[0].second == 1);
  CHECK(got[1].first == doctest::Approx(4.0));
  CHECK(got[1].second == -1);
  CHECK(got[2].first == doctest::Approx(5.0));
  CHECK(got[2].second == -1);
  CHECK(got[3].first == doctest::Approx(8.0));
  CHECK(got[3].second == 1);
  CHECK(verify_pure_witness(b, examples::badnear_z(), examples::constant_tuples()).ok);

  const CVector vp = vec({1, 1});
  const Witness one = decompose_pure(StateDensity::vector_state(m2_algebra(), 0, vp), single(flip()));
  REQUIRE(one.size() == 1);
  CHECK(one.signs[0] == 1);
  CHECK(one.weights[0] == doctest::Approx(1.0));

  CHECK_THROWS_AS(decompose_pure(StateDensity::normalized_trace(m2_algebra()), single(diag({1, 0}))), DecompositionError);
}

TEST_CASE("caratheodory_reduce") {
  const Subalgebra ct = examples::constant_tuples();
  const Witness four = examples::badnear_witness();
  const Witness same = caratheodory_reduce(four, ct);
  CHECK(same.size() == 4);

  const Witness five = examples::badnear_witness_all_five();
  CHECK(verify_pure_witness(five, examples::badnear_z(), ct).ok);
  const Witness reduced = caratheodory_reduce(five, ct);
  CHECK(reduced.size() <= ct.real_herm_dim() + 1);
  CHECK(verify_pure_witness(reduced, examples::badnear_z(), ct).ok);

  const PureState p{0, vec({1, 1})};
  Witness dup{m2_algebra(), std::vector<PureState>(6, p), std::vector<int>(6, 1), std::vector<double>(6, 1.0 / 6), {}};
  const Witness merged = caratheodory_reduce(dup, diagonal2());
  REQUIRE(merged.size() == 1);
  CHECK(merged.weights[0] == doctest::Approx(1.0));
}

TEST_CASE("uniqueness_check") {
  CHECK(uniqueness_check(examples::badnear_z(), examples::badnear_witness().state(), examples::constant_tuples()) ==
        Uniqueness::unique);
  const Element z = single(diag({2, -2}));
  CHECK(uniqueness_check(z, StateDensity(m2_algebra(), {diag({0.5, 0.5})}),
                         standard_subalgebra(m2_algebra(), SubalgebraKind::scalars)) == Uniqueness::unique);

  const Subalgebra ct = examples::constant_tuples();
  const Element zn = examples::non_unique_a() - Element::constant(examples::triple_m2(), diag({1, 0}));
  const WitnessSearch w = find_witness(zn, ct);
  REQUIRE(w.feasible());
  CHECK(uniqueness_check(zn, *w.state, ct) == Uniqueness::inconclusive);
}

TEST_CASE("witness_to_functional") {
  const Witness w = decompose_pure(flip_witness(), single(flip()));
  const HermitianFunctional psi = witness_to_functional(w);
  CHECK((psi.repr()[0] - 0.5 * flip()).norm() < 1e-10);
  CHECK(psi.real_value(single(flip())) == doctest::Approx(1.0));

  const HermitianFunctional pb = witness_to_functional(examples::badnear_witness());
  const auto ps = examples::badnear_pure_states();
  const BlockAlgebra t = examples::triple_m2();
  auto state = [&](int k) { return StateDensity::vector_state(t, ps[k].block, ps[k].vector).functional(); };
  const HermitianFunctional expected = (8.0 / 18) * state(0) + (1.0 / 18) * state(1) - (4.0 / 18) * state(2) - (5.0 / 18) * state(4);
  for (int j = 0; j < 3; ++j) CHECK((pb.repr()[j] - expected.repr()[j]).norm() < 1e-12);

  const Witness single_state{m2_algebra(), {{0, vec({1, 0})}}, {1}, {1.0}, {}};
  CHECK(witness_to_functional(single_state).is_positive());

  Witness wrong = examples::badnear_witness();
  wrong.weights = {0.25, 0.25, 0.25, 0.25};
  CHECK_THROWS_AS(witness_to_functional(wrong, examples::badnear_z(), examples::constant_tuples()), ContractViolation);
}

TEST_CASE("verify_functional_witness") {
  const Subalgebra ct = examples::constant_tuples();
  const BlockAlgebra t = examples::triple_m2();
  const Element z = examples::badnear_z();
  CHECK(verify_functional_witness(witness_to_functional(examples::badnear_witness()), z, Element::zero(t), ct).ok);

  const Element a = examples::non_unique_a();
  const HermitianFunctional zero(t, {Matrix::Zero(2, 2), Matrix::Zero(2, 2), Matrix::Zero(2, 2)});
  const Verification v0 = verify_functional_witness(zero, a, hs_project(a, ct), ct);
  CHECK_FALSE(v0.ok);
  CHECK(v0.residuals.at("attainment") > 0.1);

  // top of block 0 minus bottom of block 1: A_1 − A_2 = diag(0, 2)
  const HermitianFunctional psi = 0.5 * StateDensity::vector_state(t, 0, vec({0, 1})).functional() -
                                  0.5 * StateDensity::vector_state(t, 1, vec({0, 1})).functional();
  CHECK(verify_functional_witness(psi, a, Element::constant(t, diag({1, 0})), ct).ok);
  CHECK_THROWS_AS(verify_functional_witness(psi, a, a, ct), PreconditionError);
}
