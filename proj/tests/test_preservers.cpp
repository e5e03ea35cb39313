#include "diagkit/errors.hpp"
#include "diagkit/linalg.hpp"
#include "diagkit/normalizer.hpp"
#include "diagkit/preservers.hpp"

#include <doctest.h>

#include <random>

using namespace diagkit;

namespace {

constexpr FieldTag QQ = FieldTag::Q;

Real q(long p, long d = 1) { return Real(Rational(p, d)); }

Matrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vector> r;
  for (auto row : rows) {
    Vector v;
    for (long x : row) v.push_back(q(x));
    r.push_back(v);
  }
  return Matrix::from_rows(QQ, r);
}

Matrix random_invertible(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> d(-2, 2);
  for (;;) {
    Matrix m(QQ, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, q(d(rng)));
    }
    if (!determinant(m).is_zero()) return m;
  }
}

Matrix random_row(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> d(-2, 2);
  Matrix r(QQ, 1, n * n);
  for (std::size_t k = 0; k < n * n; ++k) r.set(0, k, q(d(rng)));
  return r;
}

bool same_up_to_scalar(const Matrix& a, const Matrix& b) {
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    if (!a.entries()[k].is_zero()) return b.entries()[k] * a.entries()[k].inverse() * a == b;
  }
  return false;
}

}  // namespace

TEST_CASE("basic maps") {
  MatrixMap id = MatrixMap::identity(QQ, 2);
  auto c = classify(id);
  REQUIRE(c.kind == PreserverKind::Phi);
  CHECK(c.verified);
  CHECK(c.mu == q(1));
  CHECK(c.p == Matrix::identity(QQ, 2));
  CHECK(c.automorphism);
  // M = tr(M) I - J M^T J^-1 for 2x2 matrices.
  REQUIRE(c.alternate.has_value());
  CHECK(c.alternate->mu == q(-1));
  CHECK(c.alternate->lambda_row == trace_row(QQ, 2));

  auto t = classify(MatrixMap::transpose_map(QQ, 3));
  REQUIRE(t.kind == PreserverKind::Psi);
  CHECK(t.verified);
  CHECK(t.p == Matrix::identity(QQ, 3));
  CHECK(t.mu == q(1));
  auto t2 = classify(MatrixMap::transpose_map(QQ, 2));
  CHECK(t2.kind == PreserverKind::Psi);
  CHECK(t2.lambda_row == Matrix(QQ, 1, 4));
  REQUIRE(t2.alternate.has_value());
  CHECK(t2.alternate->kind == PreserverKind::Phi);

  Matrix m = mat({{1, 2}, {3, 4}});
  CHECK(apply_map(MatrixMap::transpose_map(QQ, 2), m) == m.transpose());
  CHECK_THROWS_AS(make_phi(Matrix(QQ, 1, 4), mat({{1, 1}, {1, 1}}), q(1)), Error);
  CHECK_THROWS_AS(classify(MatrixMap(2, Matrix(QQ, 4, 4))), Error);
}

TEST_CASE("classify round trip") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> mus(1, 3);
  for (int t = 0; t < 12; ++t) {
    std::size_t n = 2 + t % 2;
    Matrix p = random_invertible(rng, n);
    Real mu = q(t % 3 == 0 ? -mus(rng) : mus(rng));
    Matrix lam = random_row(rng, n);
    bool anti = t % 4 >= 2;
    MatrixMap f = anti ? make_psi(lam, p, mu) : make_phi(lam, p, mu);
    if (determinant(f.coeffs()).is_zero()) continue;
    auto c = classify(f);
    CHECK(c.verified);
    PreserverParams got{c.kind, c.lambda_row, c.p, c.mu};
    if (n == 2 && got.kind != (anti ? PreserverKind::Psi : PreserverKind::Phi)) {
      REQUIRE(c.alternate.has_value());
      got = *c.alternate;
    }
    REQUIRE(got.kind == (anti ? PreserverKind::Psi : PreserverKind::Phi));
    CHECK(got.mu == mu);
    CHECK(got.lambda_row == lam);
    CHECK(same_up_to_scalar(p, got.p));
  }
}

TEST_CASE("rotation insertion map is refuted") {
  auto g = [](const Matrix& m) {
    Matrix r = m;
    r.set(0, 1, m(0, 1) - q(2) * m(1, 0));
    return r;
  };
  MatrixMap f = MatrixMap::from_function(QQ, 2, g);
  auto c = classify(f, 200, 0);
  REQUIRE(c.kind == PreserverKind::NotPhiPsi);
  REQUIRE(c.witness.has_value());
  CHECK(is_diagonalizable(*c.witness).diagonalizable);
  CHECK(!is_diagonalizable(apply_map(f, *c.witness)).diagonalizable);

  auto pv = pair_preservation_check(f, 200, 0);
  CHECK(pv.found);
  CHECK(!pair_preservation_check(MatrixMap::transpose_map(QQ, 2), 50, 0).found);
}

TEST_CASE("strong classify rejects singular maps") {
  // Kernel spanned by Diag(1,2).
  auto kill_diag = [](const Matrix& m) {
    Matrix r = m;
    Real c = m(0, 0);
    r.set(0, 0, Real());
    r.set(1, 1, m(1, 1) - q(2) * c);
    return r;
  };
  MatrixMap f = MatrixMap::from_function(QQ, 2, kill_diag);
  auto c = strong_classify(f);
  REQUIRE(c.kind == PreserverKind::SingularRejected);
  CHECK(verify_singular_pair(f, c));
  CHECK(c.pair_sum == mat({{0, 1}, {0, 0}}));
  CHECK(c.pair_b == mat({{-1, 1}, {0, -2}}));

  MatrixMap zero(2, Matrix(QQ, 4, 4));
  auto z = strong_classify(zero);
  REQUIRE(z.kind == PreserverKind::SingularRejected);
  CHECK(verify_singular_pair(zero, z));

  // Kernel spanned by a rotation generator: no diagonalizable element.
  auto kill_skew = [](const Matrix& m) {
    Matrix r = m;
    r.set(0, 1, m(0, 1) + m(1, 0));
    r.set(1, 0, Real());
    return r;
  };
  MatrixMap s = MatrixMap::from_function(QQ, 2, kill_skew);
  auto sc = strong_classify(s);
  REQUIRE(sc.kind == PreserverKind::SingularRejected);
  CHECK(verify_singular_pair(s, sc));

  // Kernel spanned by E_12: A + B = N must be a rank-one nilpotent.
  auto kill_e12 = [](const Matrix& m) {
    Matrix r = m;
    r.set(0, 1, Real());
    return r;
  };
  MatrixMap e = MatrixMap::from_function(QQ, 2, kill_e12);
  auto ec = strong_classify(e);
  REQUIRE(ec.kind == PreserverKind::SingularRejected);
  CHECK(verify_singular_pair(e, ec));
  CHECK(ec.pair_b == mat({{0, -1}, {-1, 0}}));
  CHECK((ec.pair_sum * ec.pair_sum).is_zero());
  CHECK(!ec.pair_sum.is_zero());

  // Kernel = span(I): handled by the trace adjustment.
  auto trace_free = [](const Matrix& m) {
    return m - (m.trace() * q(1, 2)) * Matrix::identity(QQ, 2);
  };
  MatrixMap tf = MatrixMap::from_function(QQ, 2, trace_free);
  auto tc = strong_classify(tf);
  CHECK(tc.trace_adjusted);
  REQUIRE(tc.kind == PreserverKind::Phi);
  CHECK(tc.verified);
  CHECK(!tc.automorphism);

  auto inj = strong_classify(MatrixMap::identity(QQ, 3));
  CHECK(inj.kind == PreserverKind::Phi);
}

TEST_CASE("phi and psi maps preserve diagonalizability") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 6; ++t) {
    std::size_t n = 2 + t % 2;
    MatrixMap f = t % 2 ? make_psi(random_row(rng, n), random_invertible(rng, n), q(2))
                        : make_phi(random_row(rng, n), random_invertible(rng, n), q(-1));
    CHECK(!refute_preservation(f, 60, static_cast<std::uint64_t>(t)).found);
    CHECK(!pair_preservation_check(f, 30, static_cast<std::uint64_t>(t)).found);
  }
  CHECK(!refute_preservation(MatrixMap::identity(QQ, 3), 100, 1).found);
}

TEST_CASE("automorphism flag matches invertibility") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 8; ++t) {
    std::size_t n = 2 + t % 2;
    Matrix lam = random_row(rng, n);
    Real mu = q(1 + t % 3);
    Real li;
    for (std::size_t i = 0; i < n; ++i) li += lam(0, i * n + i);
    // Even t: lambda(I) = -mu. Odd t: lambda(I) != -mu.
    if (t % 2 == 0) lam.set(0, 0, lam(0, 0) - li - mu);
    if (t % 2 == 1 && li == -mu) lam.set(0, 0, lam(0, 0) + q(1));
    MatrixMap f = make_phi(lam, random_invertible(rng, n), mu);
    bool invertible = !determinant(f.coeffs()).is_zero();
    CHECK(invertible == (t % 2 == 1));
    auto c = strong_classify(f);
    REQUIRE(c.kind == PreserverKind::Phi);
    CHECK(c.verified);
    CHECK(c.automorphism == invertible);
    CHECK(c.trace_adjusted == !invertible);
    CHECK(c.lambda_row == lam);
  }
}

TEST_CASE("images of S_n and its diagonal conjugate meet in dimension n") {
  std::mt19937_64 rng(21);
  constexpr FieldTag R = FieldTag::RealAlg;
  for (std::size_t n = 2; n <= 3; ++n) {
    Matrix lam = random_row(rng, n).with_field(R);
    Matrix p = random_invertible(rng, n).with_field(R);
    for (bool anti : {false, true}) {
      MatrixMap f = anti ? make_psi(lam, p, q(2)) : make_phi(lam, p, q(2));
      if (determinant(f.coeffs()).is_zero()) continue;
      Vector d;
      for (std::size_t i = 1; i <= n; ++i) d.push_back(q(static_cast<long>(i)));
      MatSubspace s = symmetric_subspace(R, n);
      MatSubspace w = conjugate(s, inverse(Matrix::diagonal(R, d)));
      auto image = [&](const MatSubspace& v) {
        std::vector<Matrix> gens;
        for (const auto& b : v.basis()) gens.push_back(apply_map(f, b));
        return MatSubspace(R, n, gens);
      };
      MatSubspace fv = image(s), fw = image(w);
      auto cv = normalize_maximal(fv);
      auto cw = normalize_maximal(fw);
      REQUIRE(cv.kind == OutcomeKind::Certificate);
      REQUIRE(cw.kind == OutcomeKind::Certificate);
      auto rep = min_intersection_report(fv, cv, fw, cw);
      CHECK(rep.dim == n);
      CHECK(rep.conjugate_to_diagonal);
    }
  }
}
