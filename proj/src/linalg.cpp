#include "qslice/linalg.hpp"

#include "qslice/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace qslice {

Partition::Partition(std::vector<int> parts) {
  for (int p : parts) {
    if (p < 0) throw Error(Errc::NegativeEntry, "negative partition part");
    if (p > 0) parts_.push_back(p);
  }
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int Partition::total() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::conjugate() const {
  std::vector<int> c;
  if (!parts_.empty()) {
    c.assign(static_cast<std::size_t>(parts_.front()), 0);
    for (int p : parts_)
      for (int k = 0; k < p; ++k) ++c[static_cast<std::size_t>(k)];
  }
  return Partition(std::move(c));
}

std::string Partition::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
  return s + "]";
}

bool dominated_by(const Partition& lhs, const Partition& rhs) {
  if (lhs.total() != rhs.total()) return false;
  const auto& a = lhs.parts();
  const auto& b = rhs.parts();
  int sa = 0, sb = 0;
  for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
    sa += k < a.size() ? a[k] : 0;
    sb += k < b.size() ? b[k] : 0;
    if (sa > sb) return false;
  }
  return true;
}

Echelon row_reduce(Matrix m) {
  Echelon e;
  std::size_t row = 0;
  Rational factor;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t c = col; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    Rational inv = Rational(1) / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c)
      if (!m(row, c).is_zero()) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).is_zero()) continue;
      Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (m(row, c).is_zero()) continue;
        factor = f;
        factor *= m(row, c);
        m(r, c) -= factor;
      }
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  e.reduced = std::move(m);
  return e;
}

std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  return row_reduce(m).pivot_cols.size();
}

std::vector<Matrix> kernel_basis(const Matrix& m) {
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Matrix> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Matrix v(m.cols(), 1);
    v(f, 0) = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v(e.pivot_cols[r], 0) = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix kernel_matrix(const Matrix& m) {
  auto basis = kernel_basis(m);
  return hconcat(basis, m.cols());
}

Matrix column_basis(const Matrix& m) {
  Echelon e = row_reduce(m);
  Matrix b(m.rows(), e.pivot_cols.size());
  for (std::size_t k = 0; k < e.pivot_cols.size(); ++k) b.set_block(0, k, m.column(e.pivot_cols[k]));
  return b;
}

bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw Error(Errc::ShapeMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix::identity(n));
  Echelon e = row_reduce(std::move(aug));
  if (e.pivot_cols.size() < n || (n > 0 && e.pivot_cols[n - 1] != n - 1))
    throw Error(Errc::InvalidArgument, "matrix is singular");
  return e.reduced.block(0, n, n, n);
}

Matrix solve_linear(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(Errc::ShapeMismatch, "solve_linear row count");
  Matrix aug(a.rows(), a.cols() + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, a.cols(), b);
  Echelon e = row_reduce(std::move(aug));
  Matrix x(a.cols(), b.cols());
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
    std::size_t pc = e.pivot_cols[r];
    if (pc >= a.cols()) throw Error(Errc::InconsistentSystem, "a*x = b has no solution");
    for (std::size_t c = 0; c < b.cols(); ++c) x(pc, c) = e.reduced(r, a.cols() + c);
  }
  return x;
}

bool span_contains(const Matrix& space, const Matrix& sub) {
  if (sub.cols() == 0) return true;
  Matrix both = hconcat(std::vector<Matrix>{space, sub}, space.rows());
  return rank(both) == rank(space);
}

bool same_column_span(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && span_contains(a, b) && span_contains(b, a);
}

std::vector<Matrix> solve_affine(const AffineSystem& system) {
  const std::size_t nu = system.unknown_shapes.size();
  const std::size_t ne = system.equations.size();
  // Every equation's unknowns must share the shape of its right-hand side.
  for (const auto& eq : system.equations) {
    for (const auto& [u, c] : eq.terms) {
      if (u >= nu) throw Error(Errc::ShapeMismatch, "equation references unknown " + std::to_string(u));
      if (system.unknown_shapes[u] != std::make_pair(eq.rhs.rows(), eq.rhs.cols()))
        throw Error(Errc::ShapeMismatch, "unknown " + std::to_string(u) + " does not match its right-hand side");
    }
  }
  Matrix coeffs(ne, nu);
  for (std::size_t e = 0; e < ne; ++e)
    for (const auto& [u, c] : system.equations[e].terms) coeffs(e, u) += c;

  // Eliminate on [coeffs | I] to obtain the row operations, then apply them to
  // the matrix right-hand sides.
  Matrix aug(ne, nu + ne);
  aug.set_block(0, 0, coeffs);
  aug.set_block(0, nu, Matrix::identity(ne));
  Echelon e = row_reduce(std::move(aug));
  std::size_t rank_coeffs = 0;
  while (rank_coeffs < e.pivot_cols.size() && e.pivot_cols[rank_coeffs] < nu) ++rank_coeffs;
  if (rank_coeffs < nu) throw Error(Errc::NonUniqueSolution, "scalar coefficient matrix is singular");

  auto combine = [&](std::size_t row, std::size_t rows, std::size_t cols) {
    Matrix acc(rows, cols);
    for (std::size_t k = 0; k < ne; ++k) {
      const Rational& w = e.reduced(row, nu + k);
      if (w.is_zero()) continue;
      acc += system.equations[k].rhs * w;
    }
    return acc;
  };
  // Rows past the rank express consistency conditions.
  for (std::size_t r = nu; r < ne; ++r) {
    bool touches = false;
    std::size_t shape_from = ne;
    for (std::size_t k = 0; k < ne; ++k)
      if (!e.reduced(r, nu + k).is_zero()) {
        touches = true;
        shape_from = k;
      }
    if (!touches) continue;
    const Matrix& ref = system.equations[shape_from].rhs;
    bool homogeneous_shapes = true;
    for (std::size_t k = 0; k < ne; ++k)
      if (!e.reduced(r, nu + k).is_zero() &&
          (system.equations[k].rhs.rows() != ref.rows() || system.equations[k].rhs.cols() != ref.cols()))
        homogeneous_shapes = false;
    if (!homogeneous_shapes) throw Error(Errc::ShapeMismatch, "inconsistent right-hand side shapes");
    if (!combine(r, ref.rows(), ref.cols()).is_zero())
      throw Error(Errc::InconsistentSystem, "equations contradict each other");
  }
  std::vector<Matrix> solution(nu);
  for (std::size_t r = 0; r < nu; ++r) {
    const auto [rows, cols] = system.unknown_shapes[r];
    solution[r] = combine(r, rows, cols);
  }
  return solution;
}

RankFactors rank_factorize(const Matrix& m, std::size_t r) {
  Echelon e = row_reduce(m);
  const std::size_t k = e.pivot_cols.size();
  if (k > r)
    throw Error(Errc::RankTooHigh, "rank " + std::to_string(k) + " exceeds " + std::to_string(r));
  RankFactors f{Matrix(m.rows(), r), Matrix(r, m.cols())};
  for (std::size_t c = 0; c < k; ++c) f.left.set_block(0, c, m.column(e.pivot_cols[c]));
  f.right.set_block(0, 0, e.reduced.block(0, 0, k, m.cols()));
  return f;
}

namespace {

std::vector<std::size_t> power_ranks(const Matrix& u) {
  const std::size_t n = u.rows();
  std::vector<std::size_t> ranks{n};
  Matrix p = Matrix::identity(n);
  while (ranks.back() > 0 && ranks.size() <= n) {
    p = p * u;
    ranks.push_back(rank(p));
    if (ranks.back() == ranks[ranks.size() - 2]) break;
  }
  return ranks;
}

}  // namespace

bool is_nilpotent(const Matrix& u) {
  if (!u.is_square()) return false;
  return power_ranks(u).back() == 0;
}

Partition jordan_type(const Matrix& u) {
  if (!u.is_square()) throw Error(Errc::ShapeMismatch, "jordan_type of a non-square matrix");
  auto ranks = power_ranks(u);
  if (ranks.back() != 0) throw Error(Errc::NotNilpotent, "matrix is not nilpotent");
  // ranks[k-1] - ranks[k] blocks have size >= k: these are the conjugate parts.
  std::vector<int> at_least;
  for (std::size_t k = 1; k < ranks.size(); ++k) at_least.push_back(static_cast<int>(ranks[k - 1] - ranks[k]));
  return Partition(std::move(at_least)).conjugate();
}

std::size_t centralizer_dim(const Matrix& u) {
  if (!u.is_square()) throw Error(Errc::ShapeMismatch, "centralizer of a non-square matrix");
  const std::size_t n = u.rows();
  Matrix op(n * n, n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t k = 0; k < n; ++k) {
        if (!u(r, k).is_zero()) op(r * n + c, k * n + c) += u(r, k);
        if (!u(k, c).is_zero()) op(r * n + c, r * n + k) -= u(k, c);
      }
  return n * n - rank(op);
}

std::size_t centralizer_dim_formula(const Partition& lambda) {
  std::size_t s = 0;
  for (int a : lambda.parts())
    for (int b : lambda.parts()) s += static_cast<std::size_t>(std::min(a, b));
  return s;
}

Matrix standard_nilpotent(const Partition& lambda) {
  const auto n = static_cast<std::size_t>(lambda.total());
  Matrix m(n, n);
  std::size_t offset = 0;
  for (int p : lambda.parts()) {
    for (int k = 0; k + 1 < p; ++k) m(offset + k, offset + k + 1) = 1;
    offset += static_cast<std::size_t>(p);
  }
  return m;
}

}  // namespace qslice
