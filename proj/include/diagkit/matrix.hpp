#pragma once

#include "diagkit/field.hpp"
#include "diagkit/real.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace diagkit {

using Vector = std::vector<Real>;

/// Dense row-major matrix over one of the exact fields.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldTag tag, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldTag tag, std::size_t n);
  static Matrix diagonal(FieldTag tag, const Vector& d);
  /// Every row must have the same length; entries must belong to the field.
  static Matrix from_rows(FieldTag tag, const std::vector<Vector>& rows);
  /// Elementary matrix E_{i,j} (zero-based).
  static Matrix unit(FieldTag tag, std::size_t n, std::size_t i, std::size_t j);
  static Matrix column_vector(FieldTag tag, const Vector& v);

  FieldTag field() const noexcept { return tag_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const Real& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, const Real& v);
  const std::vector<Real>& entries() const noexcept { return data_; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  Matrix transpose() const;
  /// Same entries, different tag. Narrowing to Q requires rational entries.
  Matrix with_field(FieldTag tag) const;

  /// Exact test: every entry is zero.
  bool is_zero() const;
  bool is_diagonal() const;
  bool is_symmetric() const;
  Real trace() const;

  Matrix operator-() const;
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Real& s, const Matrix& a);
  friend Vector operator*(const Matrix& a, const Vector& v);
  /// Exact entrywise equality (sizes and tags must agree).
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string debug_string() const;

 private:
  FieldTag tag_ = FieldTag::Q;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Real> data_;
};

/// Direct sum diag(a, b).
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Throws FieldMismatch / SizeMismatch when the operands disagree.
void require_same_field(const Matrix& a, const Matrix& b);

Real dot(const Vector& a, const Vector& b);

}  // namespace diagkit
