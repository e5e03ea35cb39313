#include "diagkit/preservers.hpp"

#include "diagkit/errors.hpp"
#include "diagkit/linalg.hpp"
#include "diagkit/subspace.hpp"

#include <random>

namespace diagkit {

MatrixMap::MatrixMap(std::size_t n, Matrix coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() != n * n || coeffs_.cols() != n * n) {
    throw Error(ErrorCode::SizeMismatch, "map coefficients must be n^2 x n^2");
  }
}

MatrixMap MatrixMap::from_function(FieldTag tag, std::size_t n, const std::function<Matrix(const Matrix&)>& g) {
  Matrix c(tag, n * n, n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    Vector col = vectorize(g(Matrix::unit(tag, n, k / n, k % n)));
    for (std::size_t r = 0; r < n * n; ++r) c.set(r, k, col[r]);
  }
  return MatrixMap(n, c);
}

MatrixMap MatrixMap::identity(FieldTag tag, std::size_t n) {
  return MatrixMap(n, Matrix::identity(tag, n * n));
}

MatrixMap MatrixMap::transpose_map(FieldTag tag, std::size_t n) {
  return from_function(tag, n, [](const Matrix& m) { return m.transpose(); });
}

Matrix apply_map(const MatrixMap& f, const Matrix& m) {
  if (m.rows() != f.n() || m.cols() != f.n()) throw Error(ErrorCode::SizeMismatch, "matrix size does not match the map");
  require_same_field(f.coeffs(), m);
  return unvectorize(f.field(), f.n(), f.coeffs() * vectorize(m));
}

Matrix trace_row(FieldTag tag, std::size_t n) {
  Matrix r(tag, 1, n * n);
  for (std::size_t i = 0; i < n; ++i) r.set(0, i * n + i, Real(1));
  return r;
}

namespace {

MatrixMap make_map(const Matrix& lambda_row, const Matrix& p, const Real& mu, bool transpose) {
  const std::size_t n = p.rows();
  const FieldTag tag = p.field();
  if (lambda_row.rows() != 1 || lambda_row.cols() != n * n) {
    throw Error(ErrorCode::SizeMismatch, "lambda must be a 1 x n^2 row");
  }
  Matrix pinv;
  try {
    pinv = inverse(p);
  } catch (const Error&) {
    throw Error(ErrorCode::SingularP, "P is singular");
  }
  return MatrixMap::from_function(tag, n, [&](const Matrix& e) {
    Matrix core = p * (transpose ? e.transpose() : e) * pinv;
    Real lam;
    for (std::size_t k = 0; k < n * n; ++k) lam += lambda_row(0, k) * e.entries()[k];
    return lam * Matrix::identity(tag, n) + mu * core;
  });
}

Real lambda_at(const Matrix& lambda_row, const Matrix& m) {
  Real s;
  for (std::size_t k = 0; k < m.entries().size(); ++k) s += lambda_row(0, k) * m.entries()[k];
  return s;
}

// Scales m so that its first nonzero entry (row-major) is 1.
Matrix normalize_p(const Matrix& p) {
  for (const auto& x : p.entries()) {
    if (!x.is_zero()) return x.inverse() * p;
  }
  return p;
}

Matrix random_invertible(std::mt19937_64& rng, FieldTag tag, std::size_t n) {
  std::uniform_int_distribution<long> d(-2, 2);
  for (;;) {
    Matrix m(tag, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, Real(d(rng)));
    }
    if (!determinant(m).is_zero()) return m;
  }
}

Vector random_diagonal(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> d(-3, 3);
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(Real(d(rng)));
  return v;
}

std::optional<PreserverClass> try_candidate(const MatrixMap& f, const Real& mu, bool anti) {
  const std::size_t n = f.n();
  const FieldTag tag = f.field();
  const Matrix id = Matrix::identity(tag, n);
  const Real inv_n = Real(Rational(1, static_cast<long>(n)));
  // h(E_ij) = g(E_ij)/mu + (tr E_ij / n) I with g the trace-free part of f.
  std::vector<Matrix> h(n * n);
  Real inv_mu = mu.inverse();
  for (std::size_t k = 0; k < n * n; ++k) {
    Matrix e = Matrix::unit(tag, n, k / n, k % n);
    Matrix fe = apply_map(f, e);
    Matrix g = fe - (fe.trace() * inv_n) * id;
    h[k] = inv_mu * g + (e.trace() * inv_n) * id;
  }
  auto at = [&](std::size_t i, std::size_t j) -> const Matrix& { return h[i * n + j]; };
  Matrix zero(tag, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          Matrix lhs = at(i, j) * at(k, l);
          const Matrix& rhs = anti ? (l == i ? at(k, j) : zero) : (j == k ? at(i, l) : zero);
          if (lhs != rhs) return std::nullopt;
        }
      }
    }
  }
  Vector p1;
  const Matrix& h11 = at(0, 0);
  for (std::size_t c = 0; c < n && p1.empty(); ++c) {
    Vector col = h11.column(c);
    for (const auto& x : col) {
      if (!x.is_zero()) {
        p1 = col;
        break;
      }
    }
  }
  if (p1.empty()) return std::nullopt;
  Matrix p(tag, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    // On the anti branch h(E_1j) = P E_j1 P^-1.
    Vector pj = (anti ? at(0, j) : at(j, 0)) * p1;
    for (std::size_t r = 0; r < n; ++r) p.set(r, j, pj[r]);
  }
  if (determinant(p).is_zero()) return std::nullopt;
  p = normalize_p(p);

  Matrix lambda_row(tag, 1, n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    Matrix e = Matrix::unit(tag, n, k / n, k % n);
    lambda_row.set(0, k, (apply_map(f, e).trace() - mu * e.trace()) * inv_n);
  }
  MatrixMap rebuilt = anti ? make_psi(lambda_row, p, mu) : make_phi(lambda_row, p, mu);
  if (!(rebuilt == f)) return std::nullopt;
  PreserverClass c;
  c.kind = anti ? PreserverKind::Psi : PreserverKind::Phi;
  c.lambda_row = lambda_row;
  c.p = p;
  c.mu = mu;
  c.verified = true;
  c.automorphism = !mu.is_zero() && lambda_at(lambda_row, id) != -mu;
  return c;
}

PreserverClass classify_injective(const MatrixMap& f, std::size_t refute_trials, std::uint64_t seed) {
  const std::size_t n = f.n();
  const FieldTag tag = f.field();
  std::vector<Real> candidates;
  if (n >= 2) {
    Matrix x0 = Matrix::unit(tag, n, 0, 0) - Matrix::unit(tag, n, 1, 1);
    Matrix fx = apply_map(f, x0);
    Matrix g = fx - (fx.trace() * Real(Rational(1, static_cast<long>(n)))) * Matrix::identity(tag, n);
    for (const auto& v : eigendata(g).values) {
      if (v.is_zero()) continue;
      for (const Real& c : {v, -v}) {
        bool seen = false;
        for (const auto& x : candidates) seen = seen || x == c;
        if (!seen) candidates.push_back(c);
      }
    }
  }
  // For n = 2 a map can be both: M^T = J adj(M) J^-1 and adj(M) = tr(M) I - M.
  // The form with mu > 0 is reported (Phi on a tie), the other goes to
  // `alternate`.
  std::optional<PreserverClass> found[2];
  for (bool anti : {false, true}) {
    for (const auto& mu : candidates) {
      if ((found[anti] = try_candidate(f, mu, anti))) break;
    }
  }
  if (found[0] && found[1]) {
    std::size_t primary = found[0]->mu < Real() && found[1]->mu > Real() ? 1 : 0;
    const PreserverClass& other = *found[1 - primary];
    found[primary]->alternate = PreserverParams{other.kind, other.lambda_row, other.p, other.mu};
    return *found[primary];
  }
  if (found[0]) return *found[0];
  if (found[1]) return *found[1];
  PreserverClass out;
  out.kind = PreserverKind::NotPhiPsi;
  RefutationResult r = refute_preservation(f, refute_trials, seed);
  if (r.found) {
    out.witness = r.witness;
    out.reason = "diagonalizable input with non-diagonalizable image";
  } else {
    out.reason = "verification failed, no witness within budget";
  }
  return out;
}

bool is_scalar(const Matrix& m) {
  return (m - m(0, 0) * Matrix::identity(m.field(), m.rows())).is_zero();
}

Matrix combine(const std::vector<Matrix>& basis, const std::vector<Real>& coeffs) {
  Matrix m(basis[0].field(), basis[0].rows(), basis[0].cols());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!coeffs[i].is_zero()) m = m + coeffs[i] * basis[i];
  }
  return m;
}

// Calls visit on sum c_i K_i for coefficient vectors from `values`, in
// lexicographic order, skipping the zero vector, until visit returns true or
// `cap` vectors were tried.
bool enumerate_combinations(const std::vector<Matrix>& basis, const std::vector<Real>& values, std::size_t cap,
                            const std::function<bool(const Matrix&)>& visit) {
  const std::size_t r = basis.size();
  std::vector<std::size_t> idx(r, 0);
  std::size_t tried = 0;
  for (;;) {
    std::size_t pos = 0;
    while (pos < r && ++idx[pos] == values.size()) idx[pos++] = 0;
    if (pos == r) return false;
    std::vector<Real> coeffs;
    for (auto i : idx) coeffs.push_back(values[i]);
    if (visit(combine(basis, coeffs))) return true;
    if (++tried >= cap) return false;
  }
}

PreserverClass reject_with_diagonalizable(const Matrix& a) {
  const std::size_t n = a.rows();
  const FieldTag tag = a.field();
  DiagDecision d = is_diagonalizable(a);
  // Reorder the eigenbasis so that the first two eigenvalues differ.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t j = 1; j < n; ++j) {
    if (d.d(j, j) != d.d(0, 0)) {
      std::swap(order[1], order[j]);
      break;
    }
  }
  Matrix q(tag, n, n);
  Vector lam;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) q.set(r, c, d.q(r, order[c]));
    lam.push_back(d.d(order[c], order[c]));
  }
  Matrix b(tag, n, n);
  for (std::size_t i = 0; i < n; ++i) b.set(i, i, -lam[i]);
  b.set(0, 1, Real(1));
  Matrix qi = inverse(q);
  PreserverClass c;
  c.kind = PreserverKind::SingularRejected;
  c.kernel_elem = a;
  c.pair_b = q * b * qi;
  c.pair_sum = a + c.pair_b;
  return c;
}

}  // namespace

MatrixMap make_phi(const Matrix& lambda_row, const Matrix& p, const Real& mu) {
  return make_map(lambda_row, p, mu, false);
}

MatrixMap make_psi(const Matrix& lambda_row, const Matrix& p, const Real& mu) {
  return make_map(lambda_row, p, mu, true);
}

std::string_view to_string(PreserverKind k) {
  switch (k) {
    case PreserverKind::Phi: return "Phi";
    case PreserverKind::Psi: return "Psi";
    case PreserverKind::NotPhiPsi: return "NotPhiPsi";
    case PreserverKind::SingularRejected: return "SingularRejected";
    case PreserverKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

PreserverClass classify(const MatrixMap& f, std::size_t refute_trials, std::uint64_t seed) {
  if (determinant(f.coeffs()).is_zero()) {
    throw Error(ErrorCode::SingularMap, "map is not invertible; use strong_classify");
  }
  return classify_injective(f, refute_trials, seed);
}

RefutationResult refute_preservation(const MatrixMap& f, std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RefutationResult r;
  for (std::size_t t = 0; t < trials; ++t) {
    Matrix q = random_invertible(rng, f.field(), f.n());
    Matrix m = q * Matrix::diagonal(f.field(), random_diagonal(rng, f.n())) * inverse(q);
    if (!is_diagonalizable_fast(apply_map(f, m))) {
      r.found = true;
      r.witness = m;
      r.trial = t;
      return r;
    }
  }
  return r;
}

PairViolation pair_preservation_check(const MatrixMap& f, std::size_t trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PairViolation v;
  for (std::size_t t = 0; t < trials; ++t) {
    Matrix q = random_invertible(rng, f.field(), f.n());
    Matrix qi = inverse(q);
    Matrix a = q * Matrix::diagonal(f.field(), random_diagonal(rng, f.n())) * qi;
    Matrix b = q * Matrix::diagonal(f.field(), random_diagonal(rng, f.n())) * qi;
    Matrix fa = apply_map(f, a);
    Matrix fb = apply_map(f, b);
    std::string reason;
    try {
      simdiag(fa, fb);
    } catch (const Error& e) {
      reason = e.code() == ErrorCode::NotCommuting ? "images do not commute" : e.what();
    }
    if (!reason.empty()) {
      v.found = true;
      v.a = a;
      v.b = b;
      v.trial = t;
      v.reason = reason;
      return v;
    }
  }
  return v;
}

PreserverClass strong_classify(const MatrixMap& f, std::size_t refute_trials, std::uint64_t seed) {
  const std::size_t n = f.n();
  const FieldTag tag = f.field();
  std::vector<Matrix> ker;
  for (const auto& v : kernel(f.coeffs())) ker.push_back(normalize_p(unvectorize(tag, n, v)));
  if (ker.empty()) return classify_injective(f, refute_trials, seed);

  bool only_scalars = ker.size() == 1 && is_scalar(ker[0]);
  if (only_scalars) {
    // g = f + tr(.) I has g(I) = n I.
    Matrix vec_id = Matrix::column_vector(tag, vectorize(Matrix::identity(tag, n)));
    Matrix tr = trace_row(tag, n);
    MatrixMap g(n, f.coeffs() + vec_id * tr);
    PreserverClass c = strong_classify(g, refute_trials, seed);
    c.trace_adjusted = true;
    if (c.kind == PreserverKind::Phi || c.kind == PreserverKind::Psi) {
      c.lambda_row = c.lambda_row - tr;
      if (c.alternate) c.alternate->lambda_row = c.alternate->lambda_row - tr;
      MatrixMap rebuilt = c.kind == PreserverKind::Phi ? make_phi(c.lambda_row, c.p, c.mu)
                                                       : make_psi(c.lambda_row, c.p, c.mu);
      c.verified = rebuilt == f;
      c.automorphism = !c.mu.is_zero() && lambda_at(c.lambda_row, Matrix::identity(tag, n)) != -c.mu;
    }
    return c;
  }

  // A diagonalizable non-scalar kernel element gives the block construction.
  std::optional<Matrix> diag_elem;
  for (const auto& k : ker) {
    if (!is_scalar(k) && is_diagonalizable_fast(k)) {
      diag_elem = k;
      break;
    }
  }
  const std::vector<Real> small = {Real(1), Real(-1), Real(2), Real(-2)};
  if (!diag_elem) {
    enumerate_combinations(ker, {Real(0), Real(1), Real(-1), Real(2), Real(-2)}, 3125, [&](const Matrix& m) {
      if (!is_scalar(m) && is_diagonalizable_fast(m)) diag_elem = m;
      return diag_elem.has_value();
    });
  }
  if (diag_elem) return reject_with_diagonalizable(*diag_elem);

  // Otherwise look for A in ker f and a nilpotent N with N - A
  // diagonalizable: t E_ij first, then rank-one u v^T with v^T u = 0.
  std::vector<Matrix> nilpotents;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (const Real& t : small) nilpotents.push_back(t * Matrix::unit(tag, n, i, j));
    }
  }
  std::vector<Vector> signs;
  {
    std::vector<long> idx(n, -1);
    for (;;) {
      Vector v;
      for (long x : idx) v.push_back(Real(x));
      signs.push_back(v);
      std::size_t pos = 0;
      while (pos < n && ++idx[pos] == 2) idx[pos++] = -1;
      if (pos == n) break;
    }
  }
  for (const auto& u : signs) {
    for (const auto& v : signs) {
      if (nilpotents.size() >= 600) break;
      if (!dot(u, v).is_zero()) continue;
      Matrix m = Matrix::column_vector(tag, u) * Matrix::column_vector(tag, v).transpose();
      if (!m.is_zero()) nilpotents.push_back(m);
    }
  }
  const std::vector<Real> coeffs = {Real(0), Real(1), Real(-1), Real(2), Real(-2), Real(Rational(1, 2)), Real(Rational(-1, 2))};
  std::optional<PreserverClass> found;
  enumerate_combinations(ker, coeffs, 48, [&](const Matrix& a) {
    for (const auto& nil : nilpotents) {
      Matrix b = nil - a;
      // b = 0 is valid but says less than a nonzero pair.
      if (!b.is_zero() && is_diagonalizable_fast(b)) {
        PreserverClass c;
        c.kind = PreserverKind::SingularRejected;
        c.kernel_elem = a;
        c.pair_b = b;
        c.pair_sum = nil;
        found = c;
        return true;
      }
    }
    return false;
  });
  if (found) return *found;

  // A non-scalar kernel element that is not diagonalizable: f(A) = f(0).
  PreserverClass c;
  c.kind = PreserverKind::SingularRejected;
  for (const auto& k : ker) {
    if (!is_scalar(k)) {
      c.kernel_elem = k;
      break;
    }
  }
  c.pair_b = Matrix(tag, n, n);
  c.pair_sum = c.kernel_elem;
  return c;
}

bool verify_singular_pair(const MatrixMap& f, const PreserverClass& c) {
  if (c.kind != PreserverKind::SingularRejected) return false;
  if (c.pair_sum != c.kernel_elem + c.pair_b) return false;
  if (!is_diagonalizable(c.pair_b).diagonalizable) return false;
  if (is_diagonalizable(c.pair_sum).diagonalizable) return false;
  Matrix diff = apply_map(f, c.pair_sum) - apply_map(f, c.pair_b);
  if (!c.trace_adjusted) return diff.is_zero();
  // After the trace adjustment the images differ by a scalar matrix, which
  // does not change diagonalizability.
  return is_scalar(diff);
}

}  // namespace diagkit
