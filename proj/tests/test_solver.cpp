#include "cstar/harness.hpp"
#include "cstar/random.hpp"
#include "cstar/solver.hpp"
#include "support.hpp"

using namespace cstar;
using namespace cstar::testing;

TEST_CASE("quotient seminorm: member of the subalgebra") {
  const Subalgebra s = examples::constant_tuples();
  const Element b = examples::badnear_b();
  const ApproxResult r = quotient_seminorm(b, s);
  CHECK(r.radius < 1e-9);
  CHECK(hs_norm(r.minimizer - b) < 1e-9);
}

TEST_CASE("quotient seminorm: non-unique example") {
  const ApproxResult r = quotient_seminorm(examples::non_unique_a(), examples::constant_tuples());
  CHECK(r.radius == doctest::Approx(1.0).epsilon(1e-6));
  const Matrix b = r.minimizer.block(0);
  CHECK(std::abs(b(0, 1)) < 1e-6);
  CHECK(std::abs(b(1, 1)) < 1e-6);
  CHECK(b(0, 0).real() >= -1e-6);
  CHECK(b(0, 0).real() <= 2 + 1e-6);
}

TEST_CASE("quotient seminorm: badnear Z is minimal") {
  const ApproxResult r = quotient_seminorm(examples::badnear_z(), examples::constant_tuples());
  CHECK(std::abs(r.radius - 5.0) < 1e-6);
  CHECK(r.lower_certified);
  CHECK(r.lower_bound <= r.radius);
  CHECK(projection_residual(r.minimizer, examples::constant_tuples()) < 1e-8);
}

TEST_CASE("best approximation: Chebyshev centre of a spectrum") {
  const BlockAlgebra a = m2_algebra();
  const Subalgebra s = standard_subalgebra(a, SubalgebraKind::scalars);
  const Element h = single(diag({0, 1}));
  const ApproxResult r = best_approximation(h, s);
  CHECK(r.radius == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(hs_norm(r.minimizer - 0.5 * Element::identity(a)) < 1e-6);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->verification.ok);
}

TEST_CASE("best approximation: badnear A") {
  const ApproxResult r = best_approximation(examples::badnear_a(), examples::constant_tuples());
  CHECK(std::abs(r.radius - 5.0) < 1e-6);
  CHECK(element_norm(r.minimizer - examples::badnear_b()) < 1e-4);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->verification.ok);
  CHECK(r.certificate->uniqueness == Uniqueness::unique);
}

TEST_CASE("best approximation: exercise matches the symmetric oracle") {
  const ApproxResult r = best_approximation(examples::exercise_a(), examples::constant_tuples());
  const ApproxResult o = oracle_grid(examples::exercise_a(), examples::exercise_symmetric_subalgebra(), {1e-3, 3});
  CHECK(std::abs(r.radius - o.radius) <= 1e-5);
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->verification.ok);
}

TEST_CASE("dilation route agrees with the Hermitian route") {
  Rng rng(11);
  const BlockAlgebra a({2, 2});
  const Subalgebra s = standard_subalgebra(a, SubalgebraKind::diagonal);
  for (int t = 0; t < 5; ++t) {
    const Element g = random_element(a, rng);
    const ApproxResult r = quotient_seminorm(g, s);
    CHECK(element_norm(g - r.minimizer) <= r.radius + 1e-7);
    CHECK(r.lower_bound <= r.radius);
    CHECK(r.radius - r.lower_bound <= 1e-6);
    const Element h = random_hermitian(a, rng);
    const ApproxResult rh = quotient_seminorm(h, s);
    const ApproxResult rd = quotient_seminorm(hermitian_dilation(h), dilated_subalgebra(s));
    CHECK(std::abs(rh.radius - rd.radius) < 1e-6);
  }
}

TEST_CASE("oracle grid") {
  const Subalgebra s = examples::constant_tuples();
  const double step = 1e-2;
  CHECK(oracle_grid(examples::badnear_b(), s, {step, 1}).radius <= step);
  CHECK(std::abs(oracle_grid(examples::non_unique_a(), s, {step, 1}).radius - 1.0) <= step);

  Rng rng(5);
  const BlockAlgebra a = m2_algebra();
  const Subalgebra scalars = standard_subalgebra(a, SubalgebraKind::scalars);
  for (int t = 0; t < 5; ++t) {
    const Element h = random_hermitian(a, rng);
    const auto ev = linalg::hermitian_eigen(h.block(0)).values;
    const double expected = (ev.maxCoeff() - ev.minCoeff()) / 2;
    CHECK(std::abs(oracle_grid(h, scalars, {step, 1}).radius - expected) <= step);
  }
  CHECK_THROWS_AS(oracle_grid(examples::badnear_z(), s, {0.0, 1}), PreconditionError);
}

TEST_CASE("same-norm distance") {
  const Subalgebra ct = examples::constant_tuples();
  const SameNormResult nu = same_norm_distance(examples::non_unique_a(), ct);
  CHECK(std::abs(nu.radius_constrained - 1.0) < 1e-6);
  CHECK(element_norm(nu.minimizer) <= element_norm(examples::non_unique_a()) + 1e-6);

  const SameNormResult bn = same_norm_distance(examples::badnear_a(), ct);
  CHECK(bn.radius_constrained > 5.0 + 1e-3);
  CHECK(element_norm(bn.minimizer) <= 7.0 + 1e-6);

  Rng rng(9);
  const BlockAlgebra a({2, 3});
  const Subalgebra c = standard_subalgebra(a, SubalgebraKind::center);
  for (int t = 0; t < 5; ++t) {
    const Element h = random_hermitian(a, rng);
    CHECK(same_norm_distance(h, c).radius_constrained - quotient_seminorm(h, c).radius <= 1e-6);
  }
}

TEST_CASE("minimality check") {
  const BlockAlgebra a = m2_algebra();
  const MinimalityResult x = minimality_check(single(flip()), standard_subalgebra(a, SubalgebraKind::diagonal));
  CHECK(x.minimal);
  CHECK(x.seminorm == doctest::Approx(1.0).epsilon(1e-7));
  const Subalgebra d = standard_subalgebra(a, SubalgebraKind::diagonal);
  CHECK(oracle_grid(single(flip()), d, {1e-2, 1}).radius == doctest::Approx(1.0).epsilon(1e-2));

  const MinimalityResult one = minimality_check(Element::identity(a), standard_subalgebra(a, SubalgebraKind::scalars));
  CHECK_FALSE(one.minimal);
  CHECK(one.seminorm < 1e-9);

  CHECK(minimality_check(examples::badnear_z(), examples::constant_tuples()).minimal);
}
