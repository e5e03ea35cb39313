#include "diagkit/subspace.hpp"

#include "diagkit/errors.hpp"
#include "diagkit/linalg.hpp"

namespace diagkit {

Vector vectorize(const Matrix& m) { return m.entries(); }

Matrix unvectorize(FieldTag tag, std::size_t n, const Vector& v) {
  if (v.size() != n * n) throw Error(ErrorCode::SizeMismatch, "vector length is not n^2");
  Matrix m(tag, n, n);
  for (std::size_t i = 0; i < n * n; ++i) m.set(i / n, i % n, v[i]);
  return m;
}

MatSubspace::MatSubspace(FieldTag tag, std::size_t n, const std::vector<Matrix>& generators)
    : tag_(tag), n_(n) {
  if (generators.empty()) return;
  Matrix stacked(tag, generators.size(), n * n);
  for (std::size_t r = 0; r < generators.size(); ++r) {
    const Matrix& g = generators[r];
    if (g.field() != tag) throw Error(ErrorCode::FieldMismatch, "generator over a different field");
    if (g.rows() != n || g.cols() != n) throw Error(ErrorCode::SizeMismatch, "generator has the wrong size");
    for (std::size_t c = 0; c < n * n; ++c) stacked.set(r, c, g.entries()[c]);
  }
  Echelon e = rref(stacked);
  pivots_ = e.pivots;
  for (std::size_t r = 0; r < pivots_.size(); ++r) rows_.push_back(e.reduced.row(r));
}

std::vector<Matrix> MatSubspace::basis() const {
  std::vector<Matrix> out;
  for (const auto& r : rows_) out.push_back(unvectorize(tag_, n_, r));
  return out;
}

Vector MatSubspace::residual(const Matrix& m) const {
  if (m.rows() != n_ || m.cols() != n_) throw Error(ErrorCode::SizeMismatch, "matrix has the wrong size");
  // In reduced echelon form the coordinate on row i is the pivot entry.
  Vector v = vectorize(m);
  Vector res = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Real& c = v[pivots_[i]];
    if (c.is_zero()) continue;
    for (std::size_t k = 0; k < res.size(); ++k) res[k] -= c * rows_[i][k];
  }
  return res;
}

std::optional<Vector> MatSubspace::coordinates(const Matrix& m) const {
  for (const auto& x : residual(m)) {
    if (!x.is_zero()) return std::nullopt;
  }
  Vector v = vectorize(m);
  Vector coords(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) coords[i] = v[pivots_[i]];
  return coords;
}

bool MatSubspace::contains(const Matrix& m) const { return coordinates(m).has_value(); }

bool operator==(const MatSubspace& a, const MatSubspace& b) {
  if (a.n_ != b.n_ || a.pivots_ != b.pivots_) return false;
  for (std::size_t i = 0; i < a.rows_.size(); ++i) {
    for (std::size_t k = 0; k < a.rows_[i].size(); ++k) {
      if (a.rows_[i][k] != b.rows_[i][k]) return false;
    }
  }
  return true;
}

MatSubspace span(FieldTag tag, std::size_t n, const std::vector<Matrix>& generators) {
  return MatSubspace(tag, n, generators);
}

namespace {

void require_compatible(const MatSubspace& a, const MatSubspace& b) {
  if (a.field() != b.field()) throw Error(ErrorCode::FieldMismatch, "subspaces over different fields");
  if (a.n() != b.n()) throw Error(ErrorCode::SizeMismatch, "subspaces of different matrix sizes");
}

}  // namespace

MatSubspace sum(const MatSubspace& a, const MatSubspace& b) {
  require_compatible(a, b);
  auto gens = a.basis();
  for (auto& m : b.basis()) gens.push_back(std::move(m));
  return MatSubspace(a.field(), a.n(), gens);
}

MatSubspace intersect(const MatSubspace& a, const MatSubspace& b) {
  require_compatible(a, b);
  const std::size_t n2 = a.n() * a.n();
  if (a.dim() == 0 || b.dim() == 0) return MatSubspace(a.field(), a.n(), {});
  // Solve sum x_i a_i - sum y_j b_j = 0.
  Matrix sys(a.field(), n2, a.dim() + b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t k = 0; k < n2; ++k) sys.set(k, i, a.echelon_rows()[i][k]);
  }
  for (std::size_t j = 0; j < b.dim(); ++j) {
    for (std::size_t k = 0; k < n2; ++k) sys.set(k, a.dim() + j, -b.echelon_rows()[j][k]);
  }
  std::vector<Matrix> gens;
  for (const auto& x : kernel(sys)) {
    Vector v(n2);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t k = 0; k < n2; ++k) v[k] += x[i] * a.echelon_rows()[i][k];
    }
    gens.push_back(unvectorize(a.field(), a.n(), v));
  }
  return MatSubspace(a.field(), a.n(), gens);
}

MatSubspace conjugate(const MatSubspace& v, const Matrix& p) {
  if (p.field() != v.field()) throw Error(ErrorCode::FieldMismatch, "conjugator over a different field");
  if (p.rows() != v.n() || p.cols() != v.n()) throw Error(ErrorCode::SizeMismatch, "conjugator has the wrong size");
  Matrix pinv;
  try {
    pinv = inverse(p);
  } catch (const Error&) {
    throw Error(ErrorCode::SingularConjugator, "conjugating matrix is singular");
  }
  std::vector<Matrix> gens;
  for (const auto& b : v.basis()) gens.push_back(p * b * pinv);
  return MatSubspace(v.field(), v.n(), gens);
}

MatSubspace symmetric_subspace(FieldTag tag, std::size_t n) {
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Matrix m = Matrix::unit(tag, n, i, j);
      if (i != j) m.set(j, i, Real(1));
      gens.push_back(m);
    }
  }
  return MatSubspace(tag, n, gens);
}

MatSubspace diagonal_subspace(FieldTag tag, std::size_t n) {
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(Matrix::unit(tag, n, i, i));
  return MatSubspace(tag, n, gens);
}

MatSubspace strictly_upper_subspace(FieldTag tag, std::size_t n) {
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) gens.push_back(Matrix::unit(tag, n, i, j));
  }
  return MatSubspace(tag, n, gens);
}

namespace {

// Columns f(B_i) for the echelon basis B_i.
Matrix map_matrix(const MatSubspace& v, const std::function<Vector(const Matrix&)>& f, std::size_t& out_len) {
  auto basis = v.basis();
  std::vector<Vector> cols;
  for (const auto& b : basis) cols.push_back(f(b));
  out_len = cols.empty() ? f(Matrix(v.field(), v.n(), v.n())).size() : cols[0].size();
  Matrix m(v.field(), out_len, basis.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < out_len; ++i) m.set(i, j, cols[j][i]);
  }
  return m;
}

Matrix combine(const MatSubspace& v, const Vector& coeffs) {
  const std::size_t n2 = v.n() * v.n();
  Vector out(n2);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    for (std::size_t k = 0; k < n2; ++k) out[k] += coeffs[i] * v.echelon_rows()[i][k];
  }
  return unvectorize(v.field(), v.n(), out);
}

}  // namespace

std::vector<Matrix> kernel_of_map(const MatSubspace& v, const std::function<Vector(const Matrix&)>& f) {
  if (v.dim() == 0) return {};
  std::size_t len = 0;
  Matrix m = map_matrix(v, f, len);
  std::vector<Matrix> out;
  if (len == 0) return v.basis();
  for (const auto& x : kernel(m)) out.push_back(combine(v, x));
  return out;
}

std::size_t image_rank(const MatSubspace& v, const std::function<Vector(const Matrix&)>& f) {
  if (v.dim() == 0) return 0;
  std::size_t len = 0;
  Matrix m = map_matrix(v, f, len);
  return len == 0 ? 0 : rank(m);
}

std::optional<AffineSolution> solve_in(const MatSubspace& v, const std::function<Vector(const Matrix&)>& f,
                                       const Vector& target) {
  if (v.dim() == 0) {
    for (const auto& t : target) {
      if (!t.is_zero()) return std::nullopt;
    }
    return AffineSolution{Matrix(v.field(), v.n(), v.n()), 0};
  }
  std::size_t len = 0;
  Matrix m = map_matrix(v, f, len);
  auto x = solve(m, target);
  if (!x) return std::nullopt;
  return AffineSolution{combine(v, *x), v.dim() - rank(m)};
}

NtBoundReport nt_bound_check(const MatSubspace& v) {
  NtBoundReport r;
  MatSubspace meet = intersect(v, strictly_upper_subspace(v.field(), v.n()));
  r.intersection_dim = meet.dim();
  r.bound_certified = meet.dim() == 0;
  if (meet.dim() > 0) r.nilpotent = meet.basis().front();
  return r;
}

}  // namespace diagkit
