#pragma once

#include <cstdint>
#include <random>

#include "cstar/algebra.hpp"

namespace cstar {

/// Seeded source of standard complex Gaussian entries (independent N(0,1) real and imaginary parts).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double normal() { return dist_(engine_); }
  Complex complex_normal() { return {normal(), normal()}; }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> dist_;
};

Element random_element(const BlockAlgebra& algebra, Rng& rng);
/// (G + G*)/2 for a Gaussian G.
Element random_hermitian(const BlockAlgebra& algebra, Rng& rng);
/// Gaussian element with every singular value shifted up by min_singular.
Element random_invertible(const BlockAlgebra& algebra, Rng& rng, double min_singular = 0.1);
CVector random_unit_vector(int n, Rng& rng);
/// Hermitian functional with Gaussian representing matrix, scaled to norm 1.
HermitianFunctional random_unit_hermitian_functional(const BlockAlgebra& algebra, Rng& rng);

}  // namespace cstar
