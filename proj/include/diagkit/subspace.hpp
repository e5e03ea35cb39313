#pragma once

#include "diagkit/matrix.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace diagkit {

/// Linear subspace of M_n. Stored as the canonical reduced row echelon form
/// of the row-major vectorized basis, so equal subspaces compare equal.
class MatSubspace {
 public:
  MatSubspace() = default;
  /// Span of the given n x n matrices (may be dependent or empty).
  MatSubspace(FieldTag tag, std::size_t n, const std::vector<Matrix>& generators);

  FieldTag field() const noexcept { return tag_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return rows_.size(); }

  /// Echelon basis as matrices, in echelon order.
  std::vector<Matrix> basis() const;
  const std::vector<Vector>& echelon_rows() const noexcept { return rows_; }

  bool contains(const Matrix& m) const;
  /// Coordinates of m in the echelon basis, or nullopt when m is outside.
  std::optional<Vector> coordinates(const Matrix& m) const;
  /// vec(m) minus its echelon reduction: a linear map vanishing exactly on V.
  Vector residual(const Matrix& m) const;

  friend bool operator==(const MatSubspace& a, const MatSubspace& b);
  friend bool operator!=(const MatSubspace& a, const MatSubspace& b) { return !(a == b); }

 private:
  FieldTag tag_ = FieldTag::Q;
  std::size_t n_ = 0;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

Vector vectorize(const Matrix& m);
Matrix unvectorize(FieldTag tag, std::size_t n, const Vector& v);

MatSubspace span(FieldTag tag, std::size_t n, const std::vector<Matrix>& generators);
MatSubspace sum(const MatSubspace& a, const MatSubspace& b);
MatSubspace intersect(const MatSubspace& a, const MatSubspace& b);
/// P V P^-1. Throws SingularConjugator.
MatSubspace conjugate(const MatSubspace& v, const Matrix& p);

MatSubspace symmetric_subspace(FieldTag tag, std::size_t n);
MatSubspace diagonal_subspace(FieldTag tag, std::size_t n);
MatSubspace strictly_upper_subspace(FieldTag tag, std::size_t n);

/// Matrices sum c_i B_i (B_i the basis of v) on which the linear map f
/// vanishes, returned as a basis of that subspace of v.
std::vector<Matrix> kernel_of_map(const MatSubspace& v, const std::function<Vector(const Matrix&)>& f);
/// Rank of the image f(v).
std::size_t image_rank(const MatSubspace& v, const std::function<Vector(const Matrix&)>& f);
/// Some M in v with f(M) = target, plus the dimension of the solution set's
/// direction space; nullopt when none exists.
struct AffineSolution {
  Matrix m;
  std::size_t freedom = 0;
};
std::optional<AffineSolution> solve_in(const MatSubspace& v, const std::function<Vector(const Matrix&)>& f,
                                       const Vector& target);

struct NtBoundReport {
  std::size_t intersection_dim = 0;
  bool bound_certified = false;  // dim(V ∩ NT_n) = 0, hence dim V <= n(n+1)/2
  std::optional<Matrix> nilpotent;
};

NtBoundReport nt_bound_check(const MatSubspace& v);

}  // namespace diagkit
