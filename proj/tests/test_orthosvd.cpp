#include "diagkit/errors.hpp"
#include "diagkit/field.hpp"
#include "diagkit/linalg.hpp"
#include "diagkit/orthosvd.hpp"

#include <doctest.h>

#include <random>

using namespace diagkit;

namespace {

constexpr FieldTag R = FieldTag::RealAlg;

Real q(long p, long d = 1) { return Real(Rational(p, d)); }

Matrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vector> r;
  for (auto row : rows) {
    Vector v;
    for (long x : row) v.push_back(q(x));
    r.push_back(v);
  }
  return Matrix::from_rows(R, r);
}

Matrix random_nonsingular(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> d(-3, 3);
  for (;;) {
    Matrix m(R, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, q(d(rng)));
    }
    if (!determinant(m).is_zero()) return m;
  }
}

bool gram_is_identity(const std::vector<Vector>& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (dot(g[i], g[j]) != q(i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("gram_schmidt examples") {
  auto g = gram_schmidt({{q(3), q(4)}, {q(1), q(0)}});
  REQUIRE(g.size() == 2);
  CHECK(g[0] == Vector{q(3, 5), q(4, 5)});
  CHECK(g[1] == Vector{q(4, 5), q(-3, 5)});
  auto h = gram_schmidt({{q(1), q(1)}});
  Real inv = sqrt_nonneg(q(2)).inverse();
  CHECK(h[0] == Vector{inv, inv});
  CHECK_THROWS_AS(gram_schmidt({{q(1), q(2)}, {q(2), q(4)}}), Error);
  CHECK_THROWS_AS(gram_schmidt({{q(1), q(1)}}, FieldTag::Q), Error);
}

TEST_CASE("gram_schmidt property") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-3, 3);
  for (int t = 0; t < 15; ++t) {
    std::vector<Vector> vs(3, Vector(3));
    for (auto& v : vs) {
      for (auto& x : v) x = q(d(rng));
    }
    Matrix m = Matrix::from_rows(R, vs);
    if (rank(m) < 3) continue;
    CHECK(gram_is_identity(gram_schmidt(vs)));
  }
}

TEST_CASE("extend_orthonormal") {
  Matrix o = extend_orthonormal({q(3, 5), q(4, 5)});
  CHECK(o.row(0) == Vector{q(3, 5), q(4, 5)});
  CHECK(is_orthogonal(o));
  Matrix e = extend_orthonormal({q(0), q(0), q(1)}, 2);
  CHECK(e.row(2) == Vector{q(0), q(0), q(1)});
  CHECK(is_orthogonal(e));
  Real s = sqrt_nonneg(q(3)).inverse();
  Matrix w = extend_orthonormal({s, s, s}, 1);
  CHECK(is_orthogonal(w));
  CHECK(w * w.transpose() == Matrix::identity(R, 3));
  try {
    extend_orthonormal({q(1), q(1)});
    FAIL("expected NotUnit");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotUnit);
  }
}

TEST_CASE("orth_diagonalize") {
  auto a = orth_diagonalize(Matrix::diagonal(R, {q(1), q(2)}));
  CHECK(a.o == Matrix::identity(R, 2));
  auto b = orth_diagonalize(int_matrix({{0, 1}, {1, 0}}));
  CHECK(b.d == Matrix::diagonal(R, {q(-1), q(1)}));
  CHECK(is_orthogonal(b.o));
  for (long x = -2; x <= 2; ++x) {
    for (long y = 1; y <= 2; ++y) {
      Matrix s = int_matrix({{x, y}, {y, -x}});
      auto od = orth_diagonalize(s);
      Real d = hypot(q(x), q(y), R);
      CHECK(od.d == Matrix::diagonal(R, {-d, d}));
      CHECK(od.o * od.d * od.o.transpose() == s);
    }
  }
  CHECK_THROWS_AS(orth_diagonalize(int_matrix({{0, 1}, {2, 0}})), Error);
  CHECK_THROWS_AS(orth_diagonalize(int_matrix({{0, 1}, {1, 0}}).with_field(FieldTag::Q)), Error);
}

TEST_CASE("svd examples") {
  auto id = svd(Matrix::identity(R, 3));
  CHECK(id.o == Matrix::identity(R, 3));
  CHECK(id.d == Matrix::identity(R, 3));
  auto r = svd(int_matrix({{3, 4}, {-4, 3}}));
  CHECK(r.d == Matrix::diagonal(R, {q(5), q(5)}));
  CHECK(r.o * r.u == q(1, 5) * int_matrix({{3, 4}, {-4, 3}}));
  auto di = svd(Matrix::diagonal(R, {q(2), q(3)}));
  CHECK(di.o * di.d * di.u == Matrix::diagonal(R, {q(2), q(3)}));
  CHECK_THROWS_AS(svd(int_matrix({{1, 2}, {2, 4}})), Error);
}

TEST_CASE("svd on random nonsingular matrices") {
  std::mt19937_64 rng(17);
  for (std::size_t n = 2; n <= 3; ++n) {
    for (int t = 0; t < 6; ++t) {
      Matrix p = random_nonsingular(rng, n);
      auto s = svd(p);
      CHECK(is_orthogonal(s.o));
      CHECK(is_orthogonal(s.u));
      CHECK(s.d.is_diagonal());
      CHECK(s.o * s.d * s.u == p);
    }
  }
}
