#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ncguard/algebra/field.hpp"

namespace ncguard {

/// Dense row-major matrix of symbols over a single field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Symbol& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Symbol at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Symbol> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Symbol> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Symbol> values);

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  FieldSpec field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Symbol> data_;
};

/// Result of reducing a matrix to reduced row echelon form.
struct Echelon {
  Matrix reduced;                    // pivot rows first, zero rows after
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination. Only the first `pivot_cols` columns are used
/// for pivots (all columns when pivot_cols is npos); the remaining columns
/// are carried along as right-hand sides.
Echelon row_reduce(Matrix m, std::size_t pivot_cols = static_cast<std::size_t>(-1));

std::size_t rank(const Matrix& m);

/// Basis of { u : m u = 0 }, one vector per free column.
std::vector<std::vector<Symbol>> null_space(const Matrix& m);

/// dst += c * src, componentwise.
void axpy(const Field& f, Symbol c, std::span<const Symbol> src, std::span<Symbol> dst);

/// Inner product sum_i a_i b_i.
Symbol dot(const Field& f, std::span<const Symbol> a, std::span<const Symbol> b);

}  // namespace ncguard
