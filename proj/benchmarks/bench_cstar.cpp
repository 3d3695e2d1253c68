#include <benchmark/benchmark.h>

#include "cstar/certificate.hpp"
#include "cstar/harness.hpp"
#include "cstar/random.hpp"
#include "cstar/representation.hpp"
#include "cstar/solver.hpp"

using namespace cstar;

static void BM_QuotientBadnear(benchmark::State& state) {
  const Element z = examples::badnear_a();
  const Subalgebra s = examples::constant_tuples();
  for (auto _ : state) benchmark::DoNotOptimize(quotient_seminorm(z, s).radius);
}
BENCHMARK(BM_QuotientBadnear)->Unit(benchmark::kMillisecond);

static void BM_QuotientRandom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const BlockAlgebra alg({n, n, n});
  const Subalgebra s = standard_subalgebra(alg, SubalgebraKind::constant_tuple);
  Rng rng(17);
  const Element a = random_element(alg, rng);
  for (auto _ : state) benchmark::DoNotOptimize(quotient_seminorm(a, s).radius);
}
BENCHMARK(BM_QuotientRandom)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_FindWitness(benchmark::State& state) {
  const Element z = examples::badnear_z();
  const Subalgebra s = examples::constant_tuples();
  for (auto _ : state) benchmark::DoNotOptimize(find_witness(z, s).feasible());
}
BENCHMARK(BM_FindWitness)->Unit(benchmark::kMillisecond);

static void BM_OracleCenter(benchmark::State& state) {
  const BlockAlgebra alg({2, 3});
  const Subalgebra s = standard_subalgebra(alg, SubalgebraKind::center);
  Rng rng(3);
  const Element a = random_hermitian(alg, rng);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_grid(a, s, {1e-2, 2}).radius);
}
BENCHMARK(BM_OracleCenter)->Unit(benchmark::kMillisecond);

static void BM_CommutatorUnitary(benchmark::State& state) {
  const Element z = examples::badnear_z();
  const Subalgebra s = examples::constant_tuples();
  const StateDensity phi = examples::badnear_witness().state();
  for (auto _ : state) benchmark::DoNotOptimize(commutator_unitary(z, s, phi).rep.dim);
}
BENCHMARK(BM_CommutatorUnitary)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
