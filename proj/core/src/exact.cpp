#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <optional>

#include "cstar/certificate.hpp"

namespace cstar {

namespace {

using Q = boost::multiprecision::cpp_rational;

struct CQ {
  Q re;
  Q im;
};

CQ operator+(const CQ& a, const CQ& b) { return {a.re + b.re, a.im + b.im}; }
CQ operator*(const CQ& a, const CQ& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

// n × n, row-major
struct QMatrix {
  int n = 0;
  std::vector<CQ> e;
  const CQ& operator()(int r, int c) const { return e[static_cast<std::size_t>(r * n + c)]; }
  CQ& operator()(int r, int c) { return e[static_cast<std::size_t>(r * n + c)]; }
};

constexpr long long kMaxDen = 1'000'000;

// Continued-fraction convergents up to kMaxDen; accepted only within `tol` of x.
std::optional<Q> rationalize(double x, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  const double sign = x < 0 ? -1.0 : 1.0;
  double r = std::abs(x);
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int k = 0; k < 64; ++k) {
    const double a = std::floor(r);
    if (a > 1e15) break;
    const auto ai = static_cast<long long>(a);
    const long long p2 = ai * p1 + p0;
    const long long q2 = ai * q1 + q0;
    if (q2 > kMaxDen) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(std::abs(x) - static_cast<double>(p1) / static_cast<double>(q1)) <= tol) {
      return Q(static_cast<long long>(sign) * p1, q1);
    }
    const double frac = r - a;
    if (frac < 1e-300) break;
    r = 1.0 / frac;
  }
  if (q1 != 0 && std::abs(std::abs(x) - static_cast<double>(p1) / static_cast<double>(q1)) <= tol) {
    return Q(static_cast<long long>(sign) * p1, q1);
  }
  return std::nullopt;
}

std::optional<QMatrix> rationalize(const Matrix& m, double tol) {
  QMatrix out;
  out.n = static_cast<int>(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double scale = std::max(1.0, std::abs(m(r, c)));
      auto re = rationalize(m(r, c).real(), tol * scale);
      auto im = rationalize(m(r, c).imag(), tol * scale);
      if (!re || !im) return std::nullopt;
      out.e.push_back({*re, *im});
    }
  }
  return out;
}

QMatrix mul(const QMatrix& a, const QMatrix& b) {
  QMatrix out{a.n, std::vector<CQ>(a.e.size())};
  for (int r = 0; r < a.n; ++r)
    for (int c = 0; c < a.n; ++c) {
      CQ s;
      for (int k = 0; k < a.n; ++k) s = s + a(r, k) * b(k, c);
      out(r, c) = s;
    }
  return out;
}

QMatrix plus(const QMatrix& a, const QMatrix& b) {
  QMatrix out = a;
  for (std::size_t i = 0; i < out.e.size(); ++i) out.e[i] = a.e[i] + b.e[i];
  return out;
}

// tr(ρ X)
CQ pairing(const QMatrix& rho, const QMatrix& x) {
  CQ s;
  for (int a = 0; a < rho.n; ++a)
    for (int b = 0; b < rho.n; ++b) s = s + rho(a, b) * x(b, a);
  return s;
}

// Rational spanning set of S^h: reduced row echelon form of the real coordinates of the
// orthonormal Hermitian basis, which is unique and rational whenever the space is.
std::optional<std::vector<std::vector<QMatrix>>> rational_span(const Subalgebra& s) {
  const BlockAlgebra& alg = s.algebra();
  struct Slot {
    int block, r, c;
    bool imag;
  };
  std::vector<Slot> slots;
  for (int j = 0; j < alg.num_blocks(); ++j)
    for (int r = 0; r < alg.block_dim(j); ++r)
      for (int c = r; c < alg.block_dim(j); ++c) {
        slots.push_back({j, r, c, false});
        if (r != c) slots.push_back({j, r, c, true});
      }
  const auto& basis = s.hermitian_basis();
  RMatrix m(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(slots.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const Complex v = basis[i].block(slots[k].block)(slots[k].r, slots[k].c);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = slots[k].imag ? v.imag() : v.real();
    }
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv;
    const double big = m.col(col).tail(m.rows() - row).cwiseAbs().maxCoeff(&piv);
    if (big < 1e-9) continue;
    piv += row;
    m.row(row).swap(m.row(piv));
    m.row(row) /= m(row, col);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r != row) m.row(r) -= m(r, col) * m.row(row);
    }
    ++row;
  }
  std::vector<std::vector<QMatrix>> out;
  for (Eigen::Index r = 0; r < row; ++r) {
    std::vector<QMatrix> el;
    for (int j = 0; j < alg.num_blocks(); ++j) {
      const int n = alg.block_dim(j);
      el.push_back({n, std::vector<CQ>(static_cast<std::size_t>(n * n))});
    }
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const auto q = rationalize(m(r, static_cast<Eigen::Index>(k)), 1e-9);
      if (!q) return std::nullopt;
      const Slot& sl = slots[k];
      QMatrix& b = el[static_cast<std::size_t>(sl.block)];
      if (sl.imag) {
        b(sl.r, sl.c).im += *q;
        b(sl.c, sl.r).im -= *q;
      } else {
        b(sl.r, sl.c).re += *q;
        if (sl.r != sl.c) b(sl.c, sl.r).re += *q;
      }
    }
    out.push_back(std::move(el));
  }
  return out;
}

std::string text(const CQ& z) {
  if (z.im == 0) return z.re.str();
  return z.re.str() + (z.im < 0 ? " - " : " + ") + Q(abs(z.im)).str() + "i";
}

}  // namespace

std::optional<ExactVerification> verify_witness_exact(const Element& z, const StateDensity& phi, const Subalgebra& s) {
  require_same_algebra(z.algebra(), phi.algebra(), "verify_witness_exact");
  require_same_algebra(z.algebra(), s.algebra(), "verify_witness_exact");
  constexpr double kTol = 1e-14;
  std::vector<QMatrix> zq;
  std::vector<QMatrix> rq;
  for (int j = 0; j < z.num_blocks(); ++j) {
    auto a = rationalize(z.block(j), kTol);
    auto r = rationalize(phi.block(j), kTol);
    if (!a || !r) return std::nullopt;
    zq.push_back(std::move(*a));
    rq.push_back(std::move(*r));
  }
  const auto norm = rationalize(element_norm(z), kTol);
  const auto span = rational_span(s);
  if (!norm || !span) return std::nullopt;

  ExactVerification out;
  CQ attain;
  for (std::size_t j = 0; j < zq.size(); ++j) attain = attain + pairing(rq[j], mul(zq[j], zq[j]));
  attain.re -= (*norm) * (*norm);
  out.norm_attainment = text(attain);
  bool zero = attain.re == 0 && attain.im == 0;
  for (const auto& b : *span) {
    CQ v;
    for (std::size_t j = 0; j < zq.size(); ++j) v = v + pairing(rq[j], plus(mul(zq[j], b[j]), mul(b[j], zq[j])));
    zero = zero && v.re == 0 && v.im == 0;
    out.orthogonality.push_back(text(v));
  }
  out.exact_zero = zero;
  return out;
}

}  // namespace cstar
