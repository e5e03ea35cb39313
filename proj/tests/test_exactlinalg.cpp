#include "diagkit/errors.hpp"
#include "diagkit/linalg.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace diagkit;

namespace {

Real q(long p, long d = 1) { return Real(Rational(p, d)); }

Matrix int_matrix(FieldTag tag, std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vector> r;
  for (auto row : rows) {
    Vector v;
    for (long x : row) v.push_back(q(x));
    r.push_back(v);
  }
  return Matrix::from_rows(tag, r);
}

Matrix random_int(std::mt19937_64& rng, FieldTag tag, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  Matrix m(tag, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, q(d(rng)));
  }
  return m;
}

Matrix random_invertible(std::mt19937_64& rng, FieldTag tag, std::size_t n) {
  for (;;) {
    Matrix m = random_int(rng, tag, n, -2, 2);
    if (!determinant(m).is_zero()) return m;
  }
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("charpoly examples") {
  Poly p = charpoly(int_matrix(FieldTag::Q, {{2, 1}, {1, 2}}));
  REQUIRE(p.size() == 3);
  CHECK(p[0] == q(3));
  CHECK(p[1] == q(-4));
  CHECK(p[2] == q(1));
  CHECK(code_of([] { charpoly(Matrix(FieldTag::Q, 2, 3)); }) == ErrorCode::NonSquare);
}

TEST_CASE("kernel and solve") {
  Matrix m = int_matrix(FieldTag::Q, {{1, 2, 3}, {2, 4, 6}});
  auto k = kernel(m);
  REQUIRE(k.size() == 2);
  for (const auto& v : k) CHECK((m * v) == Vector{q(0), q(0)});
  CHECK(rank(m) == 1);
  CHECK(!solve(m, Vector{q(1), q(1)}).has_value());
  auto x = solve(m, Vector{q(1), q(2)});
  REQUIRE(x.has_value());
  CHECK((m * *x) == Vector{q(1), q(2)});
}

TEST_CASE("inverse and determinant") {
  Matrix m = int_matrix(FieldTag::Q, {{2, 1}, {1, 1}});
  CHECK(determinant(m) == q(1));
  CHECK(m * inverse(m) == Matrix::identity(FieldTag::Q, 2));
  CHECK(code_of([] { inverse(int_matrix(FieldTag::Q, {{1, 2}, {2, 4}})); }) == ErrorCode::Singular);
}

TEST_CASE("diagonalizability examples") {
  auto d = is_diagonalizable(int_matrix(FieldTag::Q, {{2, 1}, {1, 2}}));
  REQUIRE(d.diagonalizable);
  CHECK(d.eigen.values == std::vector<Real>{q(1), q(3)});

  auto jordan = is_diagonalizable(int_matrix(FieldTag::Q, {{1, 1}, {0, 1}}));
  CHECK(!jordan.diagonalizable);
  CHECK(jordan.reason == NonDiagReason::GeometricDeficiency);

  Matrix rot = int_matrix(FieldTag::Q, {{0, -1}, {1, 0}});
  auto r = is_diagonalizable(rot);
  CHECK(!r.diagonalizable);
  CHECK(r.reason == NonDiagReason::SpectrumNotInField);
  CHECK(!is_diagonalizable(rot.with_field(FieldTag::RealAlg)).diagonalizable);

  Matrix irr = int_matrix(FieldTag::Q, {{0, 2}, {1, 0}});
  CHECK(is_diagonalizable(irr).reason == NonDiagReason::SpectrumNotInField);
  auto over_r = is_diagonalizable(irr.with_field(FieldTag::RealAlg));
  REQUIRE(over_r.diagonalizable);
  CHECK(over_r.q * over_r.d * inverse(over_r.q) == irr.with_field(FieldTag::RealAlg));
}

TEST_CASE("diagonalizability agrees with a brute-force oracle") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> d(-3, 3);
  int agree = 0;
  const int trials = 300;
  for (int t = 0; t < trials; ++t) {
    oracle::QMat om(3, std::vector<oracle::Q>(3));
    Matrix m(FieldTag::Q, 3, 3);
    // Bias towards structured matrices so both outcomes occur often.
    bool triangular = (t % 3 == 0);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        long x = (triangular && i > j) ? 0 : d(rng);
        om[i][j] = x;
        m.set(i, j, q(x));
      }
    }
    bool expect = oracle::diagonalizable_over_q(om);
    auto got = is_diagonalizable(m);
    CHECK(got.diagonalizable == expect);
    CHECK(is_diagonalizable_fast(m) == expect);
    if (got.diagonalizable) CHECK(m * got.q == got.q * got.d);
    agree += (got.diagonalizable == expect);
  }
  CHECK(agree == trials);
}

TEST_CASE("simdiag") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    Matrix p = random_invertible(rng, FieldTag::Q, 3);
    Matrix pi = inverse(p);
    Matrix a = p * Matrix::diagonal(FieldTag::Q, {q(1), q(1), q(2)}) * pi;
    Matrix b = p * Matrix::diagonal(FieldTag::Q, {q(3), q(-1), q(3)}) * pi;
    Matrix s = simdiag(a, b);
    Matrix si = inverse(s);
    CHECK((si * a * s).is_diagonal());
    CHECK((si * b * s).is_diagonal());
  }
  Matrix a = int_matrix(FieldTag::Q, {{1, 0}, {0, 2}});
  Matrix b = int_matrix(FieldTag::Q, {{0, 1}, {0, 0}});
  CHECK(code_of([&] { simdiag(a, b); }) == ErrorCode::NotCommuting);
  Matrix i2 = Matrix::identity(FieldTag::Q, 2);
  CHECK(code_of([&] { simdiag(i2, b); }) == ErrorCode::NotDiagonalizable);
}

TEST_CASE("block image test matches diagonalizability") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> small(-2, 2);
  for (int t = 0; t < 60; ++t) {
    std::size_t p = 1 + rng() % 2;
    std::size_t r = 1 + rng() % 2;
    Vector da, db;
    for (std::size_t i = 0; i < p; ++i) da.push_back(q(small(rng)));
    for (std::size_t i = 0; i < r; ++i) db.push_back(q(small(rng)));
    Matrix a = Matrix::diagonal(FieldTag::Q, da);
    Matrix b = Matrix::diagonal(FieldTag::Q, db);
    Matrix c(FieldTag::Q, p, r);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < r; ++j) c.set(i, j, q(small(rng)));
    }
    Matrix full(FieldTag::Q, p + r, p + r);
    full.set_block(0, 0, a);
    full.set_block(0, p, c);
    full.set_block(p, p, b);
    auto rep = block_image_test(a, c, b);
    CHECK(rep.pass == is_diagonalizable(full).diagonalizable);
  }
  Matrix one = int_matrix(FieldTag::Q, {{1}});
  auto rep = block_image_test(one, one, one);
  CHECK(!rep.pass);
  CHECK(rep.lambda == q(1));
  Matrix j = int_matrix(FieldTag::Q, {{1, 1}, {0, 1}});
  CHECK(code_of([&] { block_image_test(j, Matrix(FieldTag::Q, 2, 1), one); }) ==
        ErrorCode::InputNotDiagonalizable);
}
