#pragma once

#include "diagkit/matrix.hpp"

#include <vector>

namespace diagkit {

/// Orthonormal family with the same span (classical Gram-Schmidt; each
/// output vector has positive inner product with its source vector).
/// Over Q every norm must be rational, otherwise UnsupportedField.
/// Throws DependentInput.
std::vector<Vector> gram_schmidt(const std::vector<Vector>& vectors, FieldTag tag = FieldTag::RealAlg);

/// Orthogonal O whose row `row` equals the unit vector v. The remaining rows
/// come from Gram-Schmidt on the standard basis. Throws NotUnit, and
/// UnsupportedField over Q when a completion norm is irrational.
Matrix extend_orthonormal(const Vector& v, std::size_t row = 0, FieldTag tag = FieldTag::RealAlg);

struct OrthDiag {
  Matrix o;  // orthogonal, eigenvectors as columns
  Matrix d;  // diagonal, eigenvalues increasing
};

/// S = O D O^T. Throws NotSymmetric, UnsupportedField.
OrthDiag orth_diagonalize(const Matrix& s);

struct SvdTriple {
  Matrix o;
  Matrix d;
  Matrix u;
};

/// P = O D U with O, U orthogonal and D diagonal positive. Throws Singular,
/// UnsupportedField.
SvdTriple svd(const Matrix& p);

/// A^T A == I exactly.
bool is_orthogonal(const Matrix& a);

}  // namespace diagkit
