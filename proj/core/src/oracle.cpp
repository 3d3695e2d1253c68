#include <algorithm>
#include <cmath>
#include <vector>

#include "cstar/solver.hpp"

namespace cstar {

namespace {

constexpr int kMaxOracleDim = 6;
constexpr double kCoarseCells = 2e4;
constexpr std::size_t kMaxLiveCells = 20000;

// Norm of A − Σ c_i B_i with fast paths for small blocks.
class AffineNorm {
 public:
  AffineNorm(const Element& a, const std::vector<Element>& dirs, bool hermitian) : hermitian_(hermitian) {
    for (int j = 0; j < a.num_blocks(); ++j) {
      Block b;
      b.n = a.algebra().block_dim(j);
      b.a = flatten(a.block(j));
      for (const auto& d : dirs) b.dirs.push_back(flatten(d.block(j)));
      blocks_.push_back(std::move(b));
    }
  }

  double operator()(const RVector& c) const {
    double m = 0.0;
    for (const auto& b : blocks_) {
      scratch_ = b.a;
      for (std::size_t i = 0; i < b.dirs.size(); ++i) {
        const double w = c(static_cast<Eigen::Index>(i));
        const auto& d = b.dirs[i];
        for (std::size_t e = 0; e < scratch_.size(); ++e) scratch_[e] -= w * d[e];
      }
      m = std::max(m, block_norm(b.n));
    }
    return m;
  }

 private:
  struct Block {
    int n;
    std::vector<Complex> a;
    std::vector<std::vector<Complex>> dirs;
  };

  static std::vector<Complex> flatten(const Matrix& m) {
    std::vector<Complex> out;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
    return out;
  }

  double block_norm(int n) const {
    const auto& x = scratch_;
    if (n == 1) return std::abs(x[0]);
    if (n == 2) {
      if (hermitian_) {
        const double a = x[0].real();
        const double d = x[3].real();
        return std::abs(0.5 * (a + d)) + std::hypot(0.5 * (a - d), std::abs(x[2]));
      }
      const double f = std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]) + std::norm(x[3]);
      const double det = std::abs(x[0] * x[3] - x[1] * x[2]);
      return std::sqrt(0.5 * (f + std::sqrt(std::max(0.0, f * f - 4.0 * det * det))));
    }
    Matrix m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = x[static_cast<std::size_t>(r * n + c)];
    return hermitian_ ? linalg::hermitian_norm(m) : linalg::operator_norm(m);
  }

  bool hermitian_;
  std::vector<Block> blocks_;
  mutable std::vector<Complex> scratch_;
};

struct Cell {
  RVector c;
  double value;
};

// Calls visit(c) for every center + step·k, k integer in [−r_i, r_i] per coordinate.
template <class Visit>
void scan(const RVector& center, double step, const std::vector<long>& r, Visit&& visit) {
  const auto p = center.size();
  std::vector<long> k(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) k[i] = -r[i];
  RVector c(p);
  for (;;) {
    for (Eigen::Index i = 0; i < p; ++i) c(i) = center(i) + step * static_cast<double>(k[static_cast<std::size_t>(i)]);
    visit(c);
    std::size_t i = 0;
    for (; i < k.size(); ++i) {
      if (++k[i] <= r[i]) break;
      k[i] = -r[i];
    }
    if (i == k.size()) return;
  }
}

}  // namespace

ApproxResult oracle_grid(const Element& a, const Subalgebra& s, const OracleOptions& opts) {
  require_same_algebra(a.algebra(), s.algebra(), "oracle_grid");
  if (!(opts.resolution > 0.0)) throw PreconditionError("oracle_grid: resolution must be positive");
  const bool hermitian = a.is_hermitian();
  std::vector<Element> dirs = s.hermitian_basis();
  if (!hermitian) {
    for (const auto& h : s.hermitian_basis()) dirs.push_back(Complex(0.0, 1.0) * h);
  }
  const auto p = static_cast<Eigen::Index>(dirs.size());
  if (p > kMaxOracleDim) {
    throw UnsupportedError("oracle_grid: search dimension " + std::to_string(p) + " exceeds 6");
  }

  RVector center(p);
  for (Eigen::Index i = 0; i < p; ++i) center(i) = hs_inner(dirs[static_cast<std::size_t>(i)], a).real();
  const AffineNorm f(a, dirs, hermitian);
  double best_value = f(center);
  RVector best_c = center;
  if (p == 0) {
    return {best_value, Element::zero(a.algebra()), 1, 0.0, Method::oracle_grid, best_value, true, std::nullopt};
  }

  // Any B with ‖A − B‖ ≤ ‖A − P(A)‖ has HS coordinates within √N·‖A − P(A)‖ of P(A).
  const double root_n = std::sqrt(static_cast<double>(a.algebra().total_size()));
  const double radius = root_n * best_value;
  const double target = opts.resolution * std::pow(10.0, -std::max(0, opts.refine_passes));
  const double half_diag = 0.5 * std::sqrt(static_cast<double>(p));
  long evaluations = 1;

  // Coarse cells, then ternary subdivision. The objective is 1-Lipschitz in these HS-orthonormal
  // coordinates, so a cell of side h whose centre value exceeds best + h·√p/2 holds no minimizer.
  double step = std::max(radius, target);
  while (std::pow(2.0 * std::floor(radius / (step / 2.0)) + 1.0, static_cast<double>(p)) <= kCoarseCells &&
         step / 2.0 >= target) {
    step /= 2.0;
  }
  std::vector<Cell> cells;
  {
    std::vector<long> r(static_cast<std::size_t>(p), static_cast<long>(std::floor(radius / step)));
    scan(center, step, r, [&](const RVector& c) {
      const double v = f(c);
      ++evaluations;
      cells.push_back({c, v});
      if (v < best_value) {
        best_value = v;
        best_c = c;
      }
    });
  }
  bool truncated = false;
  auto prune = [&](std::vector<Cell>& live, double h) {
    const double slack = h * half_diag;
    std::erase_if(live, [&](const Cell& cell) { return cell.value - slack > best_value; });
    if (live.size() > kMaxLiveCells) {
      std::nth_element(live.begin(), live.begin() + kMaxLiveCells, live.end(),
                       [](const Cell& x, const Cell& y) { return x.value < y.value; });
      live.resize(kMaxLiveCells);
      truncated = true;
    }
  };
  prune(cells, step);
  const std::vector<long> unit(static_cast<std::size_t>(p), 1);
  while (step > target) {
    step /= 3.0;
    std::vector<Cell> next;
    for (const Cell& parent : cells) {
      scan(parent.c, step, unit, [&](const RVector& c) {
        const double v = f(c);
        ++evaluations;
        next.push_back({c, v});
        if (v < best_value) {
          best_value = v;
          best_c = c;
        }
      });
    }
    prune(next, step);
    cells = std::move(next);
  }
  double lower = best_value;
  for (const Cell& cell : cells) lower = std::min(lower, cell.value - step * half_diag);
  lower = std::max(0.0, lower);

  Element minimizer = Element::zero(a.algebra());
  for (Eigen::Index i = 0; i < p; ++i) minimizer += best_c(i) * dirs[static_cast<std::size_t>(i)];
  const double value = element_norm(a - minimizer);
  lower = std::min(lower, value);
  return {value, std::move(minimizer), evaluations, value - lower, Method::oracle_grid, lower, !truncated,
          std::nullopt};
}

}  // namespace cstar
