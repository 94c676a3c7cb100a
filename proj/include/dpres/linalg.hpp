#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dpres/scalar.hpp"

namespace dpres {

/// Dense matrix over a FieldSpec. Row-major.
class Matrix {
 public:
  Matrix() : field_(FieldSpec::rationals()) {}
  Matrix(FieldSpec field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldSpec field, std::size_t n);
  /// Builds a matrix whose columns are the given vectors (all of length `rows`).
  static Matrix from_columns(FieldSpec field, std::size_t rows,
                             const std::vector<std::vector<Scalar>>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Scalar> column(std::size_t c) const;
  std::vector<Scalar> row(std::size_t r) const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;

  bool is_zero() const;
  bool operator==(const Matrix& o) const;

  std::string to_string() const;

 private:
  FieldSpec field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

struct RowEchelon {
  Matrix reduced;                   ///< reduced row echelon form
  std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

RowEchelon row_reduce(Matrix a);
std::size_t rank(const Matrix& a);
/// Columns form a basis of {v : a v = 0}.
Matrix kernel(const Matrix& a);
/// Reduced column-echelon basis of the column space (canonical for the subspace).
Matrix column_space(const Matrix& a);
bool same_column_space(const Matrix& a, const Matrix& b);
/// True if every column of `b` lies in the column space of `a`.
bool column_space_contains(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& a);
/// Some X with a X = b, if one exists.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
Scalar determinant(const Matrix& a);

}  // namespace dpres
