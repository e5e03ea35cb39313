#include "diagkit/normalizer.hpp"

#include "diagkit/errors.hpp"
#include "diagkit/field.hpp"
#include "diagkit/linalg.hpp"
#include "diagkit/orthosvd.hpp"

#include <optional>

namespace diagkit {

std::string_view to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Certificate: return "Certificate";
    case OutcomeKind::Witness: return "Witness";
    case OutcomeKind::Obstruction: return "Obstruction";
  }
  return "?";
}

bool verify_certificate(const MatSubspace& v, const Matrix& p) {
  return conjugate(v, p) == symmetric_subspace(v.field(), v.n());
}

bool verify_witness(const MatSubspace& v, const Matrix& m) {
  return v.contains(m) && !is_diagonalizable(m).diagonalizable;
}

namespace {

// Block pieces of M = [[K, C], [L, alpha]].
Vector k_part(const Matrix& m) { return vectorize(m.block(0, 0, m.rows() - 1, m.cols() - 1)); }
Vector c_part(const Matrix& m) { return m.block(0, m.cols() - 1, m.rows() - 1, 1).entries(); }
Vector l_part(const Matrix& m) { return m.block(m.rows() - 1, 0, 1, m.cols() - 1).entries(); }
Vector alpha_part(const Matrix& m) { return {m(m.rows() - 1, m.cols() - 1)}; }

Vector concat(std::initializer_list<Vector> parts) {
  Vector out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

bool is_zero_vector(const Vector& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Matrix embed_top_left(const Matrix& q) {
  Matrix one = Matrix::identity(q.field(), 1);
  return direct_sum(q, one);
}

std::size_t triangular(std::size_t n) { return n * (n + 1) / 2; }

// Tracks V_cur = T V_orig T^-1 together with the conjugator chain.
class Work {
 public:
  explicit Work(const MatSubspace& v)
      : orig_(v), cur_(v), t_(Matrix::identity(v.field(), v.n())) {}

  const MatSubspace& cur() const { return cur_; }
  FieldTag tag() const { return orig_.field(); }
  std::size_t n() const { return orig_.n(); }

  void apply(const std::string& stage, const Matrix& p) {
    cur_ = conjugate(cur_, p);
    t_ = p * t_;
    chain_.push_back({stage, p});
  }

  NormalizationOutcome witness(const Matrix& m_cur, const std::string& stage) const {
    NormalizationOutcome out;
    out.kind = OutcomeKind::Witness;
    out.stage = stage;
    out.chain = chain_;
    out.witness = inverse(t_) * m_cur * t_;
    DiagDecision d = is_diagonalizable(out.witness);
    if (!orig_.contains(out.witness) || d.diagonalizable) {
      throw Error(ErrorCode::Internal, "witness failed verification at " + stage);
    }
    out.witness_reason = std::string(to_string(d.reason));
    return out;
  }

  NormalizationOutcome obstruction(const std::string& stage, const std::string& detail) const {
    NormalizationOutcome out;
    out.kind = OutcomeKind::Obstruction;
    out.stage = stage;
    out.detail = detail;
    out.chain = chain_;
    return out;
  }

  NormalizationOutcome certificate_or_obstruction(const std::string& stage) const {
    if (!verify_certificate(orig_, t_)) return obstruction(stage, "final conjugate differs from S_n");
    NormalizationOutcome out;
    out.kind = OutcomeKind::Certificate;
    out.p = t_;
    out.chain = chain_;
    return out;
  }

 private:
  MatSubspace orig_;
  MatSubspace cur_;
  Matrix t_;
  std::vector<Conjugator> chain_;
};

bool is_scalar(const Matrix& m) {
  return (m - m(0, 0) * Matrix::identity(m.field(), m.rows())).is_zero();
}

}  // namespace

NormalizationOutcome normalize2(const MatSubspace& v) {
  if (v.n() != 2 || v.dim() != 3) {
    throw Error(ErrorCode::WrongDimension, "normalize2 needs a 3-dimensional subspace of M_2");
  }
  const FieldTag tag = v.field();
  Work w(v);
  Matrix id = Matrix::identity(tag, 2);
  if (!v.contains(id)) {
    // V has codimension 1, so E12 - alpha I lies in V for one alpha.
    Matrix e12 = Matrix::unit(tag, 2, 0, 1);
    Vector re = v.residual(e12);
    Vector ri = v.residual(id);
    Real alpha;
    for (std::size_t k = 0; k < ri.size(); ++k) {
      if (!ri[k].is_zero()) {
        alpha = re[k] / ri[k];
        break;
      }
    }
    return w.witness(e12 - alpha * id, "n2:identity-missing");
  }

  Matrix a;
  for (const auto& b : v.basis()) {
    if (!is_scalar(b)) {
      a = b;
      break;
    }
  }
  DiagDecision da = is_diagonalizable(a);
  if (!da.diagonalizable) return w.witness(a, "n2:first-nonscalar");
  w.apply("n2:diagonalize", inverse(da.q));

  Matrix b;
  for (const auto& m : w.cur().basis()) {
    if (!m.is_diagonal()) {
      b = m;
      break;
    }
  }
  Matrix anti(tag, 2, 2);
  anti.set(0, 1, b(0, 1));
  anti.set(1, 0, b(1, 0));
  if (anti(0, 1).is_zero() || anti(1, 0).is_zero()) return w.witness(anti, "n2:nilpotent");
  anti = anti(1, 0).inverse() * anti;
  const Real& beta = anti(0, 1);
  if (beta.sign() <= 0) return w.witness(anti, "n2:not-a-square");
  Real lambda;
  try {
    lambda = sqrt_nonneg(beta, tag);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UnsupportedField) throw;
    return w.witness(anti, "n2:not-a-square");
  }
  w.apply("n2:scale", Matrix::diagonal(tag, {Real(1), lambda}));
  return w.certificate_or_obstruction("n2:verify");
}

namespace {

struct RowStage {
  std::optional<Matrix> witness;  // in the coordinates of the probed subspace
  std::string stage;
  Real a;                         // u(L1) = a L1
};

// Analysis of M_{L1} = [[U1, C1, C2], [0, 0, a], [0, 1, 0]] in a subspace that
// contains S_{n-1} + 0 and E_nn.
RowStage row_stage(const MatSubspace& x) {
  const std::size_t n = x.n();
  const FieldTag tag = x.field();
  RowStage out;
  auto f = [n](const Matrix& m) {
    Vector lower;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) lower.push_back(m(i, j));
    }
    return concat({l_part(m), alpha_part(m), lower});
  };
  Vector target(n - 1 + 1 + triangular(n - 1));
  target[n - 2] = Real(1);
  auto sol = solve_in(x, f, target);
  if (!sol) throw Error(ErrorCode::PreconditionViolated, "finalisation: L(V) is not the full row space");
  const Matrix& m = sol->m;
  const std::size_t p = n - 2;
  if (p > 0 && !m.block(0, 0, p, p).is_zero()) {
    out.witness = m;
    out.stage = "finalisation:U1-nilpotent";
    return out;
  }
  out.a = m(n - 2, n - 1);
  Matrix b = Matrix::from_rows(tag, {{Real(), out.a}, {Real(1), Real()}});
  if (!is_diagonalizable_fast(b)) {
    out.witness = m;
    out.stage = "finalisation:row-not-a-square";
    return out;
  }
  if (p == 0) return out;
  Real lambda = sqrt_nonneg(out.a, tag);
  Matrix c = m.block(0, n - 2, p, 2);
  if (c.is_zero()) return out;
  for (const Real& mu : {lambda, -lambda}) {
    Matrix a = mu * Matrix::identity(tag, p);
    if (!block_image_test(a, c, b).pass) {
      Matrix shift(tag, n, n);
      for (std::size_t i = 0; i < p; ++i) shift.set(i, i, mu);
      out.witness = m + shift;
      out.stage = "finalisation:row-block-image";
      return out;
    }
  }
  throw Error(ErrorCode::Internal, "row stage: nonzero column block passed both image tests");
}

}  // namespace

NormalizationOutcome finalisation(const MatSubspace& v) {
  const std::size_t n = v.n();
  const FieldTag tag = v.field();
  if (n < 2 || v.dim() != triangular(n)) {
    throw Error(ErrorCode::WrongDimension, "finalisation needs dim V = n(n+1)/2 with n >= 2");
  }
  Work w(v);
  if (!v.contains(Matrix::unit(tag, n, n - 1, n - 1))) {
    throw Error(ErrorCode::PreconditionViolated, "finalisation:(iii) E_nn is not in V");
  }
  auto last_row = [](const Matrix& m) { return concat({l_part(m), alpha_part(m)}); };
  MatSubspace z = span(tag, n, kernel_of_map(v, last_row));
  for (const auto& m : z.basis()) {
    if (!m.block(0, 0, n - 1, n - 1).is_symmetric()) {
      throw Error(ErrorCode::PreconditionViolated, "finalisation:(i) a zero-last-row member has a non-symmetric block");
    }
  }
  auto dup = kernel_of_map(z, k_part);
  if (!dup.empty()) return w.witness(dup.front(), "finalisation:(ii)-uniqueness");
  if (image_rank(z, k_part) != triangular(n - 1)) {
    throw Error(ErrorCode::PreconditionViolated, "finalisation:(ii) not every symmetric block occurs");
  }

  // Every [[S, C], [0, 0]] in V has C = 0.
  auto full = [](const Matrix& m) { return concat({k_part(m), l_part(m), alpha_part(m)}); };
  for (const auto& s : symmetric_subspace(tag, n - 1).basis()) {
    Vector target = concat({vectorize(s), Vector(n)});
    auto sol = solve_in(v, full, target);
    if (!sol) throw Error(ErrorCode::Internal, "symmetric block vanished");
    Vector c = c_part(sol->m);
    if (is_zero_vector(c)) continue;
    Matrix cm = Matrix::column_vector(tag, c);
    for (const auto& lambda : eigendata(s).values) {
      Matrix b = Matrix::from_rows(tag, {{lambda}});
      if (!block_image_test(s, cm, b).pass) {
        Matrix m = sol->m;
        m.set(n - 1, n - 1, lambda);
        return w.witness(m, "finalisation:symmetric-block-column");
      }
    }
    throw Error(ErrorCode::Internal, "nonzero column passed every image test");
  }

  // u(e_i) = a_i e_i and v(e_i) = 0, probed through permutations.
  std::vector<Real> a(n - 1);
  auto probe = [&](const Vector& row, std::size_t idx, std::optional<NormalizationOutcome>& out) {
    Matrix o = embed_top_left(extend_orthonormal(row, n - 2, tag));
    RowStage rs = row_stage(conjugate(v, o));
    if (rs.witness) {
      out = w.witness(inverse(o) * *rs.witness * o, rs.stage);
      return;
    }
    if (idx < a.size()) a[idx] = rs.a;
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Vector e(n - 1);
    e[i] = Real(1);
    std::optional<NormalizationOutcome> out;
    probe(e, i, out);
    if (out) return *out;
  }
  // u must be scalar: probe the rational unit row (3/5) e_1 + (4/5) e_i.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (a[i] == a[0]) continue;
    Vector row(n - 1);
    row[0] = Real(Rational(3, 5));
    row[i] = Real(Rational(4, 5));
    std::optional<NormalizationOutcome> out;
    probe(row, n, out);
    if (out) return *out;
    return w.obstruction("finalisation:u-scalar", "row map is not scalar but no witness was exposed");
  }
  Matrix scale = Matrix::identity(tag, n);
  scale.set(n - 1, n - 1, sqrt_nonneg(a[0], tag));
  w.apply("finalisation:scale", scale);
  return w.certificate_or_obstruction("finalisation:verify");
}

NormalizationOutcome normalize_maximal(const MatSubspace& v) {
  const std::size_t n = v.n();
  const FieldTag tag = v.field();
  if (n == 0 || v.dim() != triangular(n)) {
    throw Error(ErrorCode::WrongDimension, "normalize_maximal needs dim V = n(n+1)/2");
  }
  Work w(v);
  if (n == 1) return w.certificate_or_obstruction("n1:verify");
  if (n == 2) return normalize2(v);

  const std::size_t target_k = triangular(n - 1);
  MatSubspace wsp = span(tag, n, kernel_of_map(w.cur(), l_part));
  MatSubspace wp = span(tag, n, kernel_of_map(wsp, k_part));
  auto nil = kernel_of_map(wp, alpha_part);
  if (!nil.empty()) return w.witness(nil.front(), "maximal:W'-nilpotent");

  std::size_t dim_k = image_rank(wsp, k_part);
  if (dim_k > target_k) {
    // K(W) is too big to be diagonalizable: it meets NT_{n-1}.
    std::vector<Matrix> ks;
    for (const auto& m : wsp.basis()) ks.push_back(m.block(0, 0, n - 1, n - 1));
    NtBoundReport nt = nt_bound_check(span(tag, n - 1, ks));
    if (!nt.nilpotent) return w.obstruction("maximal:count", "dim K(W) exceeds C(n,2) without a nilpotent member");
    auto lift = solve_in(wsp, k_part, vectorize(*nt.nilpotent));
    return w.witness(lift->m, "maximal:K(W)-nilpotent");
  }
  if (wp.dim() != 1 || image_rank(w.cur(), l_part) != n - 1 || dim_k != target_k) {
    return w.obstruction("maximal:count", "dimension counts of L(V), K(W), W' are not n-1, C(n,2), 1");
  }

  Matrix g = wp.basis().front();
  Real alpha = g(n - 1, n - 1);
  Matrix move = Matrix::identity(tag, n);
  for (std::size_t i = 0; i + 1 < n; ++i) move.set(i, n - 1, -g(i, n - 1) / alpha);
  w.apply("maximal:move-Enn", move);

  wsp = span(tag, n, kernel_of_map(w.cur(), l_part));
  std::vector<Matrix> ks;
  for (const auto& m : wsp.basis()) ks.push_back(m.block(0, 0, n - 1, n - 1));
  MatSubspace kw = span(tag, n - 1, ks);
  NormalizationOutcome sub = normalize_maximal(kw);
  const std::string level = "n" + std::to_string(n - 1) + "/";
  if (sub.kind == OutcomeKind::Witness) {
    auto lift = solve_in(wsp, k_part, vectorize(sub.witness));
    return w.witness(lift->m, "maximal:lifted/" + level + sub.stage);
  }
  if (sub.kind == OutcomeKind::Obstruction) {
    return w.obstruction(level + sub.stage, sub.detail);
  }
  for (const auto& c : sub.chain) w.apply(level + c.stage, embed_top_left(c.p));

  NormalizationOutcome fin;
  try {
    fin = finalisation(w.cur());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PreconditionViolated) throw;
    return w.obstruction("maximal:finalisation-precondition", e.what());
  }
  if (fin.kind == OutcomeKind::Witness) {
    // fin.witness is a member of the current subspace.
    return w.witness(fin.witness, fin.stage);
  }
  if (fin.kind == OutcomeKind::Obstruction) return w.obstruction(fin.stage, fin.detail);
  for (const auto& c : fin.chain) w.apply(c.stage, c.p);
  return w.certificate_or_obstruction("maximal:verify");
}

IntersectionReport min_intersection_report(const MatSubspace& v, const NormalizationOutcome& cert_v,
                                           const MatSubspace& w, const NormalizationOutcome& cert_w) {
  if (cert_v.kind != OutcomeKind::Certificate || cert_w.kind != OutcomeKind::Certificate ||
      !verify_certificate(v, cert_v.p) || !verify_certificate(w, cert_w.p)) {
    throw Error(ErrorCode::MissingCertificate, "both subspaces need verified normalization certificates");
  }
  const std::size_t n = v.n();
  const FieldTag tag = v.field();
  IntersectionReport r;
  MatSubspace meet = intersect(v, w);
  r.dim = meet.dim();
  r.bound_holds = r.dim >= n;
  if (r.dim != n) return r;
  auto basis = meet.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (basis[i] * basis[j] != basis[j] * basis[i]) return r;
    }
  }
  // A commuting diagonalizable family of dimension n is simultaneously
  // diagonalized by any member with n distinct eigenvalues; the moment
  // curve (1, t, t^2, ...) meets such a member for some small t.
  MatSubspace dn = diagonal_subspace(tag, n);
  for (long t = 1; t <= 64; ++t) {
    Matrix g(tag, n, n);
    Real coeff(1);
    for (const auto& b : basis) {
      g = g + coeff * b;
      coeff *= Real(t);
    }
    DiagDecision d = is_diagonalizable(g);
    if (!d.diagonalizable || d.eigen.values.size() != n) continue;
    Matrix rr = inverse(d.q);
    if (conjugate(meet, rr) == dn) {
      r.conjugate_to_diagonal = true;
      r.r = rr;
    }
    return r;
  }
  return r;
}

}  // namespace diagkit
