#pragma once

#include "qslice/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace qslice {

// Dense row-major matrix over Q. Zero-sized shapes (0 x k, k x 0) are legal and
// behave as zero maps under every operation.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix identity(std::size_t n);
  static Matrix scalar(std::size_t n, const Rational& s);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<const Rational> data() const noexcept { return data_; }

  bool is_zero() const noexcept;

  Matrix transpose() const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);
  /// Submatrix with the given row and column index lists.
  Matrix select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  Matrix column(std::size_t c) const { return block(0, c, rows_, 1); }

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(const Rational& s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
  friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  Matrix operator-() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix hconcat(std::span<const Matrix> blocks, std::size_t rows);
Matrix vconcat(std::span<const Matrix> blocks, std::size_t cols);
Matrix direct_sum(const Matrix& a, const Matrix& b);
Matrix power(const Matrix& m, unsigned k);
/// m*x - x*m.
Matrix commutator(const Matrix& m, const Matrix& x);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

}  // namespace qslice
