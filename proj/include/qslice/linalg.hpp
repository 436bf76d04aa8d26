#pragma once

#include "qslice/matrix.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace qslice {

/// Weakly decreasing sequence of positive integers.
class Partition {
 public:
  Partition() = default;
  /// Sorts and drops zero parts; negative parts are rejected.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int total() const noexcept;
  std::size_t length() const noexcept { return parts_.size(); }
  Partition conjugate() const;
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// lhs ⪯ rhs in dominance order: equal totals and every partial sum of lhs is
/// at most the corresponding partial sum of rhs.
bool dominated_by(const Partition& lhs, const Partition& rhs);

/// Reduced row echelon form; pivots are chosen as the first nonzero entry in
/// column order, so bases derived from it are deterministic.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};
Echelon row_reduce(Matrix m);

std::size_t rank(const Matrix& m);
/// Basis of the right kernel, one column vector per free column.
std::vector<Matrix> kernel_basis(const Matrix& m);
/// Kernel basis packed as the columns of a cols x nullity matrix.
Matrix kernel_matrix(const Matrix& m);
/// The pivot columns of m: a basis of its column space.
Matrix column_basis(const Matrix& m);
Matrix inverse(const Matrix& m);
bool is_invertible(const Matrix& m);
/// Some x with a*x = b; throws InconsistentSystem when none exists.
Matrix solve_linear(const Matrix& a, const Matrix& b);
/// Columns of `sub` lie in the column span of `space`.
bool span_contains(const Matrix& space, const Matrix& sub);
bool same_column_span(const Matrix& a, const Matrix& b);

/// One equation  sum_k coeff_k * X_{unknown_k} = rhs  of an affine system in
/// matrix-valued unknowns with scalar coefficients.
struct AffineEquation {
  std::vector<std::pair<std::size_t, Rational>> terms;
  Matrix rhs;
};

struct AffineSystem {
  std::vector<std::pair<std::size_t, std::size_t>> unknown_shapes;
  std::vector<AffineEquation> equations;
};

/// Solves the system by exact elimination on the scalar coefficient matrix.
/// Throws NonUniqueSolution if the coefficient matrix has a kernel,
/// InconsistentSystem if the equations contradict each other, and
/// ShapeMismatch if a right-hand side does not match its unknowns' shape.
std::vector<Matrix> solve_affine(const AffineSystem& system);

struct RankFactors {
  Matrix left;   // rows x r
  Matrix right;  // r x cols
};
/// m = left * right with inner dimension r; throws RankTooHigh if rank(m) > r.
RankFactors rank_factorize(const Matrix& m, std::size_t r);

bool is_nilpotent(const Matrix& u);
/// Jordan type of a nilpotent matrix from the rank sequence of its powers.
Partition jordan_type(const Matrix& u);
/// dim { m : u m = m u }, from the exact kernel of m -> u m - m u.
std::size_t centralizer_dim(const Matrix& u);
/// sum_{i,j} min(lambda_i, lambda_j).
std::size_t centralizer_dim_formula(const Partition& lambda);
/// Block diagonal sum of Jordan blocks (ones on the superdiagonal).
Matrix standard_nilpotent(const Partition& lambda);

}  // namespace qslice
