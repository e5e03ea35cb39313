#include "diagkit/matrix.hpp"

#include "diagkit/errors.hpp"

#include <sstream>

namespace diagkit {

Matrix::Matrix(FieldTag tag, std::size_t rows, std::size_t cols)
    : tag_(tag), rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::identity(FieldTag tag, std::size_t n) {
  Matrix m(tag, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = Real(1);
  return m;
}

Matrix Matrix::diagonal(FieldTag tag, const Vector& d) {
  Matrix m(tag, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
  return m;
}

Matrix Matrix::from_rows(FieldTag tag, const std::vector<Vector>& rows) {
  if (rows.empty()) return Matrix(tag, 0, 0);
  Matrix m(tag, rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw Error(ErrorCode::SizeMismatch, "ragged matrix rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Matrix Matrix::unit(FieldTag tag, std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(tag, n, n);
  m.data_[i * n + j] = Real(1);
  return m;
}

Matrix Matrix::column_vector(FieldTag tag, const Vector& v) {
  Matrix m(tag, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, const Real& v) {
  require_field(v, tag_);
  data_[r * cols_ + c] = v;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix b(tag_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) b.data_[r * nc + c] = (*this)(r0 + r, c0 + c);
  }
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) set(r0 + r, c0 + c, b(r, c));
  }
}

Matrix Matrix::transpose() const {
  Matrix t(tag_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = (*this)(r, c);
  }
  return t;
}

Matrix Matrix::with_field(FieldTag tag) const {
  Matrix m(tag, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    require_field(data_[i], tag);
    m.data_[i] = data_[i];
  }
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_) {
    if (!x.is_zero()) return false;
  }
  return true;
}

bool Matrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (r != c && !(*this)(r, c).is_zero()) return false;
    }
  }
  return true;
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = r + 1; c < cols_; ++c) {
      if ((*this)(r, c) != (*this)(c, r)) return false;
    }
  }
  return true;
}

Real Matrix::trace() const {
  if (!is_square()) throw Error(ErrorCode::NonSquare, "trace of a non-square matrix");
  Real t;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Matrix Matrix::operator-() const {
  Matrix m(tag_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = -data_[i];
  return m;
}

void require_same_field(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw Error(ErrorCode::FieldMismatch, "matrices over different fields");
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::SizeMismatch, "matrix shapes differ");
  }
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix m(a.tag_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] + b.data_[i];
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix m(a.tag_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = a.data_[i] - b.data_[i];
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols_ != b.rows_) throw Error(ErrorCode::SizeMismatch, "matrix product shape mismatch");
  Matrix m(a.tag_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Real& aik = a(i, k);
      if (aik.is_rational() && aik.rational() == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        m.data_[i * b.cols_ + j] += aik * b(k, j);
      }
    }
  }
  return m;
}

Matrix operator*(const Real& s, const Matrix& a) {
  require_field(s, a.tag_);
  Matrix m(a.tag_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) m.data_[i] = s * a.data_[i];
  return m;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols_ != v.size()) throw Error(ErrorCode::SizeMismatch, "matrix-vector shape mismatch");
  Vector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.data_.size(); ++i) {
    if (a.data_[i] != b.data_[i]) return false;
  }
  return true;
}

std::string Matrix::debug_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).debug_string();
  }
  os << "]";
  return os.str();
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

Real dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::SizeMismatch, "dot product length mismatch");
  Real s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace diagkit
