#include "diagkit/linalg.hpp"

#include "diagkit/errors.hpp"
#include "diagkit/field.hpp"

namespace diagkit {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (!m.is_square()) throw Error(ErrorCode::NonSquare, std::string(what) + " of a non-square matrix");
}

Matrix scalar_shift(const Matrix& m, const Real& lambda) {
  Matrix r = m;
  for (std::size_t i = 0; i < m.rows(); ++i) r.set(i, i, m(i, i) - lambda);
  return r;
}

Poly squarefree(const Poly& p) {
  Poly g = gcd(p, derivative(p));
  Poly s, rem;
  divmod(p, g, s, rem);
  return make_monic(s);
}

}  // namespace

Echelon rref(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<Vector> a(rows);
  for (std::size_t r = 0; r < rows; ++r) a[r] = m.row(r);
  Echelon out;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t p = lead;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[lead]);
    Real inv = a[lead][c].inverse();
    for (std::size_t k = c; k < cols; ++k) a[lead][k] *= inv;
    a[lead][c] = Real(1);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || a[r][c].is_zero()) continue;
      Real f = a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[lead][k];
      a[r][c] = Real();
    }
    out.pivots.push_back(c);
    ++lead;
  }
  out.reduced = Matrix(m.field(), rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out.reduced.set(r, c, a[r][c]);
  }
  return out;
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> kernel(const Matrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = Real(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = -e.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw Error(ErrorCode::SizeMismatch, "right-hand side length mismatch");
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t r = 0; r < a.rows(); ++r) aug.set(r, a.cols(), b[r]);
  Echelon e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vector x(a.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) x[e.pivots[i]] = e.reduced(i, a.cols());
  return x;
}

Real determinant(const Matrix& m) {
  require_square(m, "determinant");
  const std::size_t n = m.rows();
  std::vector<Vector> a(n);
  for (std::size_t r = 0; r < n; ++r) a[r] = m.row(r);
  Real det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return Real();
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    Real inv = a[c][c].inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c].is_zero()) continue;
      Real f = a[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

Matrix inverse(const Matrix& m) {
  require_square(m, "inverse");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix::identity(m.field(), n));
  Echelon e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) {
    throw Error(ErrorCode::Singular, "matrix is singular");
  }
  return e.reduced.block(0, n, n, n);
}

Poly charpoly(const Matrix& m) {
  require_square(m, "charpoly");
  const std::size_t n = m.rows();
  Poly c(n + 1);
  c[n] = Real(1);
  Matrix mk(m.field(), n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next.set(i, i, next(i, i) + c[n - k + 1]);
    mk = std::move(next);
    c[n - k] = -(m * mk).trace() / Real(static_cast<long>(k));
  }
  return c;
}

EigenData eigendata(const Matrix& m) {
  require_square(m, "eigendata");
  EigenData out;
  out.values = roots_in_field(charpoly(m), m.field());
  for (const auto& lambda : out.values) out.bases.push_back(kernel(scalar_shift(m, lambda)));
  return out;
}

std::string_view to_string(NonDiagReason r) {
  return r == NonDiagReason::SpectrumNotInField ? "SpectrumNotInField" : "GeometricDeficiency";
}

DiagDecision is_diagonalizable(const Matrix& m) {
  require_square(m, "is_diagonalizable");
  const std::size_t n = m.rows();
  DiagDecision out;
  Poly s = squarefree(charpoly(m));
  std::vector<Real> roots = roots_in_field(s, m.field());
  if (static_cast<int>(roots.size()) < degree(s)) {
    out.reason = NonDiagReason::SpectrumNotInField;
    return out;
  }
  out.eigen.values = roots;
  std::size_t total = 0;
  for (const auto& lambda : roots) {
    out.eigen.bases.push_back(kernel(scalar_shift(m, lambda)));
    total += out.eigen.bases.back().size();
  }
  if (total < n) {
    out.reason = NonDiagReason::GeometricDeficiency;
    return out;
  }
  out.diagonalizable = true;
  out.q = Matrix(m.field(), n, n);
  Vector diag;
  std::size_t col = 0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (const auto& v : out.eigen.bases[i]) {
      for (std::size_t r = 0; r < n; ++r) out.q.set(r, col, v[r]);
      diag.push_back(roots[i]);
      ++col;
    }
  }
  out.d = Matrix::diagonal(m.field(), diag);
  return out;
}

Matrix evaluate(const Poly& p, const Matrix& m) {
  require_square(m, "polynomial evaluation");
  Matrix acc(m.field(), m.rows(), m.cols());
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = acc * m;
    for (std::size_t k = 0; k < m.rows(); ++k) acc.set(k, k, acc(k, k) + p[i]);
  }
  return acc;
}

bool is_diagonalizable_fast(const Matrix& m) {
  require_square(m, "is_diagonalizable");
  Poly s = squarefree(charpoly(m));
  if (static_cast<int>(roots_in_field(s, m.field()).size()) < degree(s)) return false;
  return evaluate(s, m).is_zero();
}

Matrix simdiag(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  require_square(a, "simdiag");
  if (a.rows() != b.rows() || !b.is_square()) throw Error(ErrorCode::SizeMismatch, "simdiag sizes differ");
  if (a * b != b * a) throw Error(ErrorCode::NotCommuting, "A and B do not commute");
  DiagDecision da = is_diagonalizable(a);
  if (!da.diagonalizable) throw Error(ErrorCode::NotDiagonalizable, "A is not diagonalizable");
  if (!is_diagonalizable_fast(b)) throw Error(ErrorCode::NotDiagonalizable, "B is not diagonalizable");
  const std::size_t n = a.rows();
  Matrix p(a.field(), n, n);
  std::size_t col = 0;
  for (const auto& basis : da.eigen.bases) {
    const std::size_t k = basis.size();
    Matrix e(a.field(), n, k);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t r = 0; r < n; ++r) e.set(r, j, basis[j][r]);
    }
    // B E = E C: solve column by column.
    Matrix be = b * e;
    Matrix c(a.field(), k, k);
    for (std::size_t j = 0; j < k; ++j) {
      auto x = solve(e, be.column(j));
      if (!x) throw Error(ErrorCode::Internal, "eigenspace of A not invariant under B");
      for (std::size_t r = 0; r < k; ++r) c.set(r, j, (*x)[r]);
    }
    DiagDecision dc = is_diagonalizable(c);
    if (!dc.diagonalizable) {
      throw Error(ErrorCode::NotDiagonalizable, "restriction of B to an eigenspace of A");
    }
    Matrix cols = e * dc.q;
    p.set_block(0, col, cols);
    col += k;
  }
  return p;
}

BlockImageReport block_image_test(const Matrix& a, const Matrix& c, const Matrix& b) {
  require_same_field(a, c);
  require_same_field(a, b);
  if (!a.is_square() || !b.is_square() || c.rows() != a.rows() || c.cols() != b.rows()) {
    throw Error(ErrorCode::SizeMismatch, "block shapes do not fit");
  }
  if (!is_diagonalizable_fast(a)) throw Error(ErrorCode::InputNotDiagonalizable, "A is not diagonalizable");
  DiagDecision db = is_diagonalizable(b);
  if (!db.diagonalizable) throw Error(ErrorCode::InputNotDiagonalizable, "B is not diagonalizable");
  BlockImageReport report;
  for (std::size_t i = 0; i < db.eigen.values.size(); ++i) {
    Matrix shifted = scalar_shift(a, db.eigen.values[i]);
    for (const auto& x : db.eigen.bases[i]) {
      if (!solve(shifted, c * x)) {
        report.pass = false;
        report.lambda = db.eigen.values[i];
        report.witness = x;
        return report;
      }
    }
  }
  return report;
}

}  // namespace diagkit
