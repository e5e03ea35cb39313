#include "diagkit/orthosvd.hpp"

#include "diagkit/errors.hpp"
#include "diagkit/field.hpp"
#include "diagkit/linalg.hpp"

namespace diagkit {

namespace {

void require_real_closed(FieldTag tag, const char* what) {
  if (tag != FieldTag::RealAlg) {
    throw Error(ErrorCode::UnsupportedField,
                std::string(what) + " needs square roots of sums of squares; Q is not Pythagorean");
  }
}

}  // namespace

std::vector<Vector> gram_schmidt(const std::vector<Vector>& vectors, FieldTag tag) {
  // Orthogonalize without normalizing, then divide each vector by its own
  // norm: no square root ever sits inside another.
  std::vector<Vector> ortho;
  std::vector<Real> sq;
  for (const auto& v : vectors) {
    Vector u = v;
    for (std::size_t j = 0; j < ortho.size(); ++j) {
      Real c = dot(v, ortho[j]) / sq[j];
      if (c.is_zero()) continue;
      for (std::size_t k = 0; k < u.size(); ++k) u[k] -= c * ortho[j][k];
    }
    Real n2 = dot(u, u);
    if (n2.is_zero()) throw Error(ErrorCode::DependentInput, "gram_schmidt input is linearly dependent");
    ortho.push_back(std::move(u));
    sq.push_back(n2);
  }
  for (std::size_t j = 0; j < ortho.size(); ++j) {
    Real inv = sqrt_nonneg(sq[j], tag).inverse();
    for (auto& x : ortho[j]) x *= inv;
  }
  return ortho;
}

Matrix extend_orthonormal(const Vector& v, std::size_t row, FieldTag tag) {
  const std::size_t n = v.size();
  if (row >= n) throw Error(ErrorCode::SizeMismatch, "designated row out of range");
  if (dot(v, v) != Real(1)) throw Error(ErrorCode::NotUnit, "vector is not a unit vector");
  std::vector<Vector> family = {v};
  for (std::size_t i = 0; i < n && family.size() < n; ++i) {
    Vector e(n);
    e[i] = Real(1);
    family.push_back(e);
    Matrix m(tag, family.size(), n);
    for (std::size_t r = 0; r < family.size(); ++r) {
      for (std::size_t c = 0; c < n; ++c) m.set(r, c, family[r][c]);
    }
    if (rank(m) < family.size()) family.pop_back();
  }
  auto ortho = gram_schmidt(family, tag);
  Matrix o(tag, n, n);
  std::size_t next = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const Vector& src = (r == row) ? v : ortho[1 + next++];
    for (std::size_t c = 0; c < n; ++c) o.set(r, c, src[c]);
  }
  return o;
}

OrthDiag orth_diagonalize(const Matrix& s) {
  require_real_closed(s.field(), "orth_diagonalize");
  if (!s.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric");
  const std::size_t n = s.rows();
  EigenData e = eigendata(s);
  OrthDiag out{Matrix(s.field(), n, n), Matrix(s.field(), n, n)};
  std::size_t col = 0;
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    for (const auto& u : gram_schmidt(e.bases[i], s.field())) {
      if (col == n) break;
      for (std::size_t r = 0; r < n; ++r) out.o.set(r, col, u[r]);
      out.d.set(col, col, e.values[i]);
      ++col;
    }
  }
  if (col != n) throw Error(ErrorCode::Internal, "symmetric matrix has an incomplete spectrum");
  return out;
}

SvdTriple svd(const Matrix& p) {
  require_real_closed(p.field(), "svd");
  if (!p.is_square()) throw Error(ErrorCode::NonSquare, "svd of a non-square matrix");
  if (determinant(p).is_zero()) throw Error(ErrorCode::Singular, "svd input is singular");
  const std::size_t n = p.rows();
  OrthDiag od = orth_diagonalize(p.transpose() * p);
  Vector sigma;
  for (std::size_t i = 0; i < n; ++i) {
    const Real& l2 = od.d(i, i);
    if (l2.sign() <= 0) throw Error(ErrorCode::Internal, "Gram matrix eigenvalue is not positive");
    sigma.push_back(sqrt_nonneg(l2));
  }
  SvdTriple out;
  out.d = Matrix::diagonal(p.field(), sigma);
  out.u = od.o.transpose();
  // O = P S^-1 O1 with S = O1 D O1^T, which simplifies to P O1 D^-1.
  Matrix po1 = p * od.o;
  out.o = Matrix(p.field(), n, n);
  for (std::size_t c = 0; c < n; ++c) {
    Real inv = sigma[c].inverse();
    for (std::size_t r = 0; r < n; ++r) out.o.set(r, c, po1(r, c) * inv);
  }
  if (!is_orthogonal(out.o)) throw Error(ErrorCode::Internal, "svd factor O is not orthogonal");
  return out;
}

bool is_orthogonal(const Matrix& a) {
  return a.is_square() && a.transpose() * a == Matrix::identity(a.field(), a.rows());
}

}  // namespace diagkit
