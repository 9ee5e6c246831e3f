#pragma once

// Dense exact linear algebra over a dpi::Field.

#include <cstddef>
#include <optional>
#include <vector>

#include "dpi/fields.hpp"

namespace dpi {

using Vec = std::vector<Fe>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, size_t rows, size_t cols);
  static Matrix identity(Field f, size_t n);
  /// Every row must have the same length; an empty list gives a 0 x cols matrix.
  static Matrix from_rows(Field f, const std::vector<Vec>& rows, size_t cols = 0);
  static Matrix from_ints(Field f, const std::vector<std::vector<int64_t>>& rows);

  const Field& field() const { return field_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Fe& operator()(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Fe& operator()(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  Vec row(size_t i) const;
  Vec col(size_t j) const;
  void set_row(size_t i, const Vec& v);
  void append_row(const Vec& v);
  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Vec operator*(const Vec& v) const;
  Matrix scaled(const Fe& c) const;
  /// Rows [r0, r1) and columns [c0, c1).
  Matrix block(size_t r0, size_t r1, size_t c0, size_t c1) const;
  /// Stacks o below this matrix.
  Matrix vstack(const Matrix& o) const;

  bool is_zero() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  nlohmann::json to_json() const;

 private:
  Field field_ = Field::rationals();
  size_t rows_ = 0, cols_ = 0;
  std::vector<Fe> a_;
};

struct Rref {
  Matrix form;  // same shape as the input; zero rows at the bottom
  size_t rank = 0;
  std::vector<size_t> pivots;
};

Rref rref(const Matrix& m);
size_t rank(const Matrix& m);
/// Rows span the right null space {v : m v = 0}; the basis is the standard
/// one read off the rref (free variable set to 1, other free variables 0).
Matrix kernel_basis(const Matrix& m);
/// Some x with m x = b, or nullopt when the system is inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
Fe det(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);
/// The nonzero rows of rref(m): a canonical basis of the row space.
Matrix row_basis(const Matrix& m);
bool subspace_equal(const Matrix& a, const Matrix& b);
bool row_space_contains(const Matrix& a, const Vec& v);

}  // namespace dpi
