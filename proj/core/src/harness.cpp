#include "cstar/harness.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "cstar/random.hpp"

namespace cstar {

namespace {

constexpr double kPropertyTol = 1e-5;

Rng trial_rng(std::uint64_t seed, int trial) {
  return Rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(trial + 1)));
}

std::string fmt(const char* pattern, double a) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a);
  return buf;
}

template <class F>
auto with_trial(int trial, F&& f) {
  try {
    return f();
  } catch (const BudgetExceeded& e) {
    throw BudgetExceeded(std::string(e.what()) + " (trial " + std::to_string(trial) + ")", e.lower, e.upper);
  }
}

double seminorm(const Element& a, const Subalgebra& s) { return quotient_seminorm(a, s).radius; }

// Aggregates named sub-checks as residual/tolerance ratios; pass iff every ratio ≤ 1.
struct SubChecks {
  CheckReport report;

  explicit SubChecks(std::string name) {
    report.name = std::move(name);
    report.tolerance = 1.0;
    report.worst_violation = 0.0;
    report.trials = 0;
  }

  void add(const std::string& what, double residual, double tol) {
    const double ratio = tol > 0.0 ? residual / tol : (residual > 0.0 ? 1e300 : 0.0);
    ++report.trials;
    report.worst_violation = std::max(report.worst_violation, ratio);
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s: %.3e (limit %.1e) %s", what.c_str(), residual, tol, ratio <= 1.0 ? "ok" : "FAIL");
    report.details.emplace_back(buf);
  }

  void require(const std::string& what, bool ok) {
    ++report.trials;
    if (!ok) report.worst_violation = std::max(report.worst_violation, 2.0);
    report.details.push_back(what + (ok ? ": ok" : ": FAIL"));
  }

  CheckReport done() {
    report.pass = report.worst_violation <= report.tolerance;
    return std::move(report);
  }
};

Matrix m2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

CVector v2(double a, double b) {
  CVector v(2);
  v << a, b;
  return v / v.norm();
}

double max_abs_diff(const std::vector<Matrix>& x, const std::vector<Matrix>& y) {
  double m = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) m = std::max(m, (x[j] - y[j]).cwiseAbs().maxCoeff());
  return m;
}

std::vector<Matrix> density_of(const BlockAlgebra& alg, const std::vector<std::pair<PureState, double>>& parts) {
  std::vector<Matrix> rho;
  for (int j = 0; j < alg.num_blocks(); ++j) rho.push_back(Matrix::Zero(alg.block_dim(j), alg.block_dim(j)));
  for (const auto& [ps, t] : parts) rho[static_cast<std::size_t>(ps.block)] += t * ps.vector * ps.vector.adjoint();
  return rho;
}

}  // namespace

CheckReport check_leibniz(const Subalgebra& s, int trials, std::uint64_t seed) {
  CheckReport r{"leibniz[" + s.label() + "]", trials, -std::numeric_limits<double>::infinity(), kPropertyTol, false, seed, {}};
  const BlockAlgebra& alg = s.algebra();
  int worst_trial = -1;
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, i);
    const bool herm = i % 2 == 0;
    Element a = herm ? random_hermitian(alg, rng) : random_element(alg, rng);
    const Element c = herm ? random_hermitian(alg, rng) : random_element(alg, rng);
    if (i % 10 == 9) a = hs_project(a, s);  // A ∈ S
    const double v = with_trial(i, [&] {
      const double la = seminorm(a, s);
      const double lc = seminorm(c, s);
      const double rhs = la * element_norm(c) + element_norm(a) * lc;
      return std::max(seminorm(a * c, s), seminorm(c * a, s)) - rhs;
    });
    if (v > r.worst_violation) {
      r.worst_violation = v;
      worst_trial = i;
    }
  }
  r.pass = r.worst_violation <= r.tolerance;
  r.details.push_back("worst trial " + std::to_string(worst_trial));
  return r;
}

CheckReport check_strong_leibniz(const Subalgebra& s, int trials, std::uint64_t seed) {
  CheckReport r{"strong_leibniz[" + s.label() + "]", trials, -std::numeric_limits<double>::infinity(), kPropertyTol, false, seed, {}};
  const BlockAlgebra& alg = s.algebra();
  const double l_one = seminorm(Element::identity(alg), s);
  r.details.push_back(fmt("L(1) = %.3e", l_one));
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, i);
    const Element a = i == 0 ? 2.0 * Element::identity(alg) : random_invertible(alg, rng);
    const Element inv = a.inverse();
    const double v = with_trial(i, [&] {
      const double n = element_norm(inv);
      return seminorm(inv, s) - n * n * seminorm(a, s);
    });
    r.worst_violation = std::max(r.worst_violation, v);
  }
  r.pass = r.worst_violation <= r.tolerance && l_one <= 1e-9;
  return r;
}

CheckReport check_same_norm(const Subalgebra& s, int trials, std::uint64_t seed, const std::vector<Element>& designated) {
  CheckReport r{"same_norm[" + s.label() + "]", 0, -std::numeric_limits<double>::infinity(), kPropertyTol, false, seed, {}};
  const BlockAlgebra& alg = s.algebra();
  bool bound_ok = true;
  auto run = [&](const Element& a, int index, bool is_designated) {
    const auto [gap, excess] = with_trial(index, [&] {
      const ApproxResult free = quotient_seminorm(a, s);
      const SameNormResult sn = same_norm_distance(a, s);
      return std::pair{sn.radius_constrained - free.radius, element_norm(free.minimizer) - 2.0 * element_norm(a)};
    });
    ++r.trials;
    r.worst_violation = std::max(r.worst_violation, gap);
    if (excess > 1e-6) {
      bound_ok = false;
      r.details.push_back("trial " + std::to_string(index) + fmt(": minimizer exceeds 2||A|| by %.3e", excess));
    }
    if (is_designated) r.details.push_back("designated " + std::to_string(index) + fmt(": gap %.6e", gap));
  };
  for (std::size_t k = 0; k < designated.size(); ++k) run(designated[k], static_cast<int>(k), true);
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, i);
    run(i % 2 == 0 ? random_hermitian(alg, rng) : random_element(alg, rng), i, false);
  }
  r.pass = r.worst_violation <= r.tolerance && bound_ok;
  r.details.push_back(r.pass ? "same-norm property holds on this sample" : "same-norm property fails on this sample");
  return r;
}

CheckReport check_radial_retraction(const Subalgebra& s, int trials, std::uint64_t seed) {
  CheckReport r{"radial_retraction[" + s.label() + "]", trials, -std::numeric_limits<double>::infinity(), 1e-9, false, seed, {}};
  const BlockAlgebra& alg = s.algebra();
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, i);
    const Element a = i % 2 == 0 ? random_hermitian(alg, rng) : random_element(alg, rng);
    const Element f = with_trial(i, [&] { return quotient_seminorm(a, s).minimizer; });
    const RetractionResult g = radial_retraction(a, f, s);
    const double v = std::max(g.norm_retracted - element_norm(a), g.distance_after - g.distance_before);
    r.worst_violation = std::max(r.worst_violation, v);
  }
  r.pass = r.worst_violation <= r.tolerance;
  return r;
}

CheckReport check_commutant_corollaries(std::uint64_t seed, int trials) {
  CheckReport r{"commutant_corollaries", 0, -std::numeric_limits<double>::infinity(), 1e-6, false, seed, {}};
  const BlockAlgebra alg = examples::triple_m2();
  const Subalgebra s = examples::constant_tuples();
  double worst_scalar = 0.0;
  int normal_hits = 0;
  for (int i = 0; i < trials; ++i) {
    Rng rng = trial_rng(seed, i);
    // A in the commutant of S: scalar tuples
    std::vector<Complex> d;
    for (int j = 0; j < 3; ++j) d.push_back(i % 2 == 0 ? Complex(rng.normal(), 0.0) : rng.complex_normal());
    const Element a = Element::scalars(alg, d);
    const auto [gap, lambda_excess, scalar_dev] = with_trial(i, [&] {
      const ApproxResult res = quotient_seminorm(a, s);
      const SameNormResult sn = same_norm_distance(a, s);
      const Matrix& b = res.minimizer.block(0);
      const Complex lambda = b.trace() / 2.0;
      const double dev = (b - lambda * Matrix::Identity(2, 2)).norm();
      return std::tuple{sn.radius_constrained - res.radius, std::abs(lambda) - element_norm(a), dev};
    });
    ++r.trials;
    r.worst_violation = std::max({r.worst_violation, gap, lambda_excess});
    worst_scalar = std::max(worst_scalar, scalar_dev);

    // Hermitian diagonal tuples: the best approximation found is often normal and commuting.
    std::vector<Matrix> blocks;
    for (int j = 0; j < 3; ++j) blocks.push_back(m2(rng.normal(), 0.0, 0.0, rng.normal()));
    const Element h(alg, blocks);
    with_trial(i, [&] {
      const ApproxResult res = quotient_seminorm(h, s);
      const Element& b = res.minimizer;
      const bool normal = hs_norm(b * b.adjoint() - b.adjoint() * b) <= 1e-6;
      const bool commutes = hs_norm(commutator(h, b)) <= 1e-6;
      if (normal && commutes) {
        ++normal_hits;
        ++r.trials;
        const SameNormResult sn = same_norm_distance(h, s);
        r.worst_violation = std::max(r.worst_violation, sn.radius_constrained - res.radius);
      }
      return 0;
    });
  }
  r.details.push_back(fmt("worst distance of a scalar-tuple minimizer from λ·1: %.3e", worst_scalar));
  r.details.push_back("normal commuting best approximations checked: " + std::to_string(normal_hits));
  r.pass = r.worst_violation <= r.tolerance;
  return r;
}

std::vector<CheckReport> run_paper_examples() {
  using namespace examples;
  std::vector<CheckReport> out;
  const Subalgebra s = constant_tuples();
  {
    SubChecks c("badnear");
    const Element z = badnear_z();
    const ApproxResult lz = quotient_seminorm(z, s);
    c.add("L(Z) - 5", std::abs(lz.radius - 5.0), 1e-6);
    const Witness w = badnear_witness();
    const StateDensity phi = w.state();
    const Verification ver = verify_witness(z, phi, s, 1e-12);
    c.require("printed witness verifies", ver.ok);
    const auto exact = verify_witness_exact(z, phi, s);
    c.require("exact rational residuals are zero", exact && exact->exact_zero);
    c.require("find_witness succeeds", find_witness(z, s).feasible());
    const JordanDecomposition jd = jordan_decompose(witness_to_functional(w, z, s));
    const auto ps = badnear_pure_states();
    const auto plus = density_of(z.algebra(), {{ps[0], 8.0 / 9.0}, {ps[1], 1.0 / 9.0}});
    const auto minus = density_of(z.algebra(), {{ps[2], 4.0 / 9.0}, {ps[4], 5.0 / 9.0}});
    c.add("psi+ vs (8 phi1+ + phi2+)/9", max_abs_diff(jd.plus.repr(), plus), 1e-12);
    c.add("psi- vs (4 phi2- + 5 phi3-)/9", max_abs_diff(jd.minus.repr(), minus), 1e-12);
    c.require("phi restricted to S is faithful (unique)", uniqueness_check(z, phi, s) == Uniqueness::unique);
    const Element a = badnear_a();
    c.add("||A|| - 7", std::abs(element_norm(a) - 7.0), 1e-12);
    const ApproxResult la = quotient_seminorm(a, s);
    c.add("L(A) - 5", std::abs(la.radius - 5.0), 1e-6);
    c.add("best approximation - diag(-8,0)", element_norm(la.minimizer - badnear_b()), 1e-4);
    c.add("||best|| - 8", std::abs(element_norm(la.minimizer) - 8.0), 1e-4);
    const SameNormResult sn = same_norm_distance(a, s);
    const double gap = sn.radius_constrained - la.radius;
    c.add("same-norm gap above 1e-3 (1e-3/gap)", gap > 0.0 ? 1e-3 / gap : 1e300, 1.0 - 1e-12);
    out.push_back(c.done());
  }
  {
    SubChecks c("non_unique");
    const Element a = non_unique_a();
    const ApproxResult la = quotient_seminorm(a, s);
    c.add("L(A) - 1", std::abs(la.radius - 1.0), 1e-6);
    for (const double t : {0.0, 1.0, 2.0}) {
      const Element b = Element::constant(a.algebra(), m2(t, 0.0, 0.0, 0.0));
      c.add(fmt("||A - diag(%g,0)|| - 1", t), std::abs(element_norm(a - b) - 1.0), 1e-9);
    }
    const SameNormResult sn = same_norm_distance(a, s);
    c.add("same-norm gap", std::abs(sn.radius_constrained - la.radius), 1e-6);
    out.push_back(c.done());
  }
  {
    SubChecks c("exercise");
    const Element a = exercise_a();
    const ApproxResult solver = quotient_seminorm(a, s);
    const ApproxResult oracle = oracle_grid(a, exercise_symmetric_subalgebra(), {1e-3, 3});
    c.add("|solver - oracle|", std::abs(solver.radius - oracle.radius), 1e-5);
    c.report.details.push_back(fmt("solver radius %.9f", solver.radius));
    c.report.details.push_back(fmt("oracle radius %.9f", oracle.radius));
    out.push_back(c.done());
  }
  return out;
}

namespace examples {

BlockAlgebra triple_m2() { return BlockAlgebra({2, 2, 2}); }

Subalgebra constant_tuples() { return standard_subalgebra(triple_m2(), SubalgebraKind::constant_tuple); }

Element badnear_z() {
  return Element(triple_m2(), {m2(2, 0, 0, 5), m2(4, -3, -3, -4), m2(4, 3, 3, -4)});
}

Element badnear_b() { return Element::constant(triple_m2(), m2(-8, 0, 0, 0)); }

Element badnear_a() { return badnear_z() + badnear_b(); }

std::vector<PureState> badnear_pure_states() {
  return {{0, v2(0, 1)}, {1, v2(3, -1)}, {1, v2(1, 3)}, {2, v2(3, 1)}, {2, v2(1, -3)}};
}

Witness badnear_witness() {
  const auto ps = badnear_pure_states();
  return Witness{triple_m2(), {ps[0], ps[1], ps[2], ps[4]}, {1, 1, -1, -1}, {8.0 / 18, 1.0 / 18, 4.0 / 18, 5.0 / 18}, {}};
}

Witness badnear_witness_all_five() {
  return Witness{triple_m2(), badnear_pure_states(), {1, 1, -1, 1, -1},
                 {16.0 / 36, 1.0 / 36, 9.0 / 36, 1.0 / 36, 9.0 / 36}, {}};
}

Element non_unique_a() {
  return Element(triple_m2(), {m2(1, 0, 0, 1), m2(1, 0, 0, -1), m2(1, 0, 0, 0)});
}

Element exercise_a() {
  return Element(triple_m2(), {m2(1, 0, 0, 0), m2(0, 0, 0, 1), m2(0, 1, 1, 0)});
}

Subalgebra exercise_symmetric_subalgebra() {
  const BlockAlgebra alg = triple_m2();
  const std::vector<Element> gens{Element::constant(alg, m2(0, 1, 1, 0))};
  return build_subalgebra(alg, gens);
}

}  // namespace examples

}  // namespace cstar
