#pragma once

#include "diagkit/fieldpoly.hpp"
#include "diagkit/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace diagkit {

struct Echelon {
  Matrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

/// Gauss-Jordan elimination; the pivot is the first nonzero entry of a column.
Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Basis of {x : M x = 0}, one vector per free column (that coordinate is 1).
std::vector<Vector> kernel(const Matrix& m);

/// A solution of A x = b, or nullopt when the system is inconsistent.
std::optional<Vector> solve(const Matrix& a, const Vector& b);

Real determinant(const Matrix& m);
/// Throws Singular.
Matrix inverse(const Matrix& m);

/// Monic characteristic polynomial det(tI - M), lowest degree first.
/// Faddeev-LeVerrier recurrence. Throws NonSquare.
Poly charpoly(const Matrix& m);

struct EigenData {
  std::vector<Real> values;                // distinct, increasing
  std::vector<std::vector<Vector>> bases;  // eigenspace basis per value
};

/// Eigenvalues in the field with their eigenspaces.
EigenData eigendata(const Matrix& m);

enum class NonDiagReason { SpectrumNotInField, GeometricDeficiency };
std::string_view to_string(NonDiagReason r);

struct DiagDecision {
  bool diagonalizable = false;
  NonDiagReason reason = NonDiagReason::SpectrumNotInField;
  EigenData eigen;
  Matrix q;  // columns are eigenvectors; q^-1 M q = d
  Matrix d;
};

DiagDecision is_diagonalizable(const Matrix& m);

/// Common eigenbasis P of commuting diagonalizable A, B: both P^-1 A P and
/// P^-1 B P are diagonal. Throws NotCommuting, or NotDiagonalizable with the
/// message naming A, B or restriction.
Matrix simdiag(const Matrix& a, const Matrix& b);

struct BlockImageReport {
  bool pass = true;
  Real lambda;     // first failing eigenvalue of B
  Vector witness;  // eigenvector X with C X outside im(A - lambda I)
};

/// For block upper triangular [[A, C], [0, B]] with A, B diagonalizable:
/// the matrix is diagonalizable iff C X lies in im(A - lambda I) for each
/// eigenpair (lambda, X) of B. Throws InputNotDiagonalizable.
BlockImageReport block_image_test(const Matrix& a, const Matrix& c, const Matrix& b);

/// Fast exact decision: the squarefree part of the characteristic
/// polynomial splits in the field and annihilates M.
bool is_diagonalizable_fast(const Matrix& m);

/// Evaluates a polynomial at a square matrix.
Matrix evaluate(const Poly& p, const Matrix& m);

}  // namespace diagkit
