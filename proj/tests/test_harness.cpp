#include "cstar/harness.hpp"
#include "cstar/solver.hpp"
#include "support.hpp"

using namespace cstar;
using namespace cstar::testing;

TEST_CASE("leibniz: flip squared against the diagonal") {
  const Subalgebra d = standard_subalgebra(m2_algebra(), SubalgebraKind::diagonal);
  const Element x = single(flip());
  const double lhs = quotient_seminorm(x * x, d).radius;
  CHECK(lhs < 1e-9);
  CHECK(lhs <= 2 * quotient_seminorm(x, d).radius * element_norm(x));
}

TEST_CASE("leibniz suite") {
  const CheckReport r = check_leibniz(examples::constant_tuples(), 40, 7);
  CHECK(r.pass);
  CHECK(r.trials == 40);
  CHECK(r.worst_violation <= 1e-5);
}

TEST_CASE("reports are reproducible from the seed") {
  const Subalgebra d = standard_subalgebra(m2_algebra(), SubalgebraKind::diagonal);
  const CheckReport a = check_leibniz(d, 10, 42);
  const CheckReport b = check_leibniz(d, 10, 42);
  CHECK(a.worst_violation == b.worst_violation);
  CHECK(a.details == b.details);
}

TEST_CASE("strong leibniz") {
  const CheckReport r = check_strong_leibniz(standard_subalgebra(BlockAlgebra({3}), SubalgebraKind::diagonal), 30, 3);
  CHECK(r.pass);

  const Subalgebra ct = examples::constant_tuples();
  const Element a = Element::identity(examples::triple_m2()) + 0.1 * examples::badnear_z();
  const Element inv = a.inverse();
  const double n = element_norm(inv);
  CHECK(quotient_seminorm(inv, ct).radius <= n * n * quotient_seminorm(a, ct).radius + 1e-5);
}

TEST_CASE("same norm") {
  CHECK(check_same_norm(standard_subalgebra(BlockAlgebra({2, 3}), SubalgebraKind::center), 20, 1).pass);
  CHECK(check_same_norm(standard_subalgebra(m2_algebra(), SubalgebraKind::diagonal), 20, 2).pass);
  const std::vector<Element> designated{examples::badnear_a()};
  const CheckReport r = check_same_norm(examples::constant_tuples(), 5, 3, designated);
  CHECK_FALSE(r.pass);
  CHECK(r.worst_violation > 1e-3);
}

TEST_CASE("radial retraction suite") {
  CHECK(check_radial_retraction(standard_subalgebra(BlockAlgebra({2, 3}), SubalgebraKind::center), 20, 4).pass);
}

TEST_CASE("commutant corollaries") {
  const BlockAlgebra t = examples::triple_m2();
  const Subalgebra ct = examples::constant_tuples();
  const std::vector<Complex> d1{1.0, -1.0, 0.0};
  const ApproxResult r1 = quotient_seminorm(Element::scalars(t, d1), ct);
  CHECK(element_norm(r1.minimizer) < 1e-6);
  CHECK(r1.radius == doctest::Approx(1.0).epsilon(1e-7));

  const std::vector<Complex> d2{2.0, 0.0, 1.0};
  const ApproxResult r2 = quotient_seminorm(Element::scalars(t, d2), ct);
  CHECK(hs_norm(r2.minimizer - Element::identity(t)) < 1e-6);
  CHECK(element_norm(r2.minimizer) <= 2.0);

  CHECK(check_commutant_corollaries(5, 30).pass);
}

TEST_CASE("worked examples") {
  for (const CheckReport& r : run_paper_examples()) {
    INFO(r.name);
    CHECK(r.pass);
  }
}
