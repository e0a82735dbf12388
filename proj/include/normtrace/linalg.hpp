#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "normtrace/field.hpp"

namespace normtrace {

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Elem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Elem> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  /// Submatrix keeping every row and only the listed columns.
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row, in order.
std::vector<std::size_t> row_reduce(const Field& f, Matrix& m);

std::size_t rank(const Field& f, Matrix m);

/// Basis of {x : m x = 0}, one vector per free column.
std::vector<std::vector<Elem>> nullspace(const Field& f, Matrix m);

/// Nonzero rows of the reduced row echelon form of m.
Matrix row_space_basis(const Field& f, Matrix m);

/// coeffs^T * m, i.e. the linear combination of the rows of m.
std::vector<Elem> combine_rows(const Field& f, const Matrix& m, std::span<const Elem> coeffs);

/// True when a and b are nonzero scalar multiples of each other. Zero vectors
/// are proportional only to zero vectors.
bool proportional(const Field& f, std::span<const Elem> a, std::span<const Elem> b);

}  // namespace normtrace
