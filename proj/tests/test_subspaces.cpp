#include "diagkit/errors.hpp"
#include "diagkit/field.hpp"
#include "diagkit/linalg.hpp"
#include "diagkit/normalizer.hpp"

#include <doctest.h>

#include <random>

using namespace diagkit;

namespace {

constexpr FieldTag R = FieldTag::RealAlg;
constexpr FieldTag QQ = FieldTag::Q;

Real q(long p, long d = 1) { return Real(Rational(p, d)); }

Matrix mat(FieldTag tag, std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<Vector> r;
  for (auto row : rows) {
    Vector v;
    for (long x : row) v.push_back(q(x));
    r.push_back(v);
  }
  return Matrix::from_rows(tag, r);
}

Matrix random_invertible(std::mt19937_64& rng, FieldTag tag, std::size_t n) {
  std::uniform_int_distribution<long> d(-2, 2);
  for (;;) {
    Matrix m(tag, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, q(d(rng)));
    }
    if (!determinant(m).is_zero()) return m;
  }
}

}  // namespace

TEST_CASE("subspace operations") {
  for (std::size_t n = 2; n <= 5; ++n) {
    Vector d;
    for (std::size_t i = 1; i <= n; ++i) d.push_back(q(static_cast<long>(i)));
    Matrix dm = Matrix::diagonal(QQ, d);
    MatSubspace s = symmetric_subspace(QQ, n);
    MatSubspace meet = intersect(s, conjugate(s, inverse(dm)));
    CHECK(meet == diagonal_subspace(QQ, n));
    CHECK(intersect(s, s) == s);
    CHECK(s.dim() == n * (n + 1) / 2);
  }
  Matrix o = mat(QQ, {{0, 1}, {1, 0}});
  CHECK(conjugate(symmetric_subspace(QQ, 2), o) == symmetric_subspace(QQ, 2));
  Matrix rot = Matrix::from_rows(QQ, {{q(3, 5), q(-4, 5)}, {q(4, 5), q(3, 5)}});
  CHECK(conjugate(symmetric_subspace(QQ, 2), rot) == symmetric_subspace(QQ, 2));
  CHECK_THROWS_AS(conjugate(symmetric_subspace(QQ, 2), mat(QQ, {{1, 1}, {1, 1}})), Error);

  MatSubspace a = span(QQ, 2, {Matrix::unit(QQ, 2, 0, 0)});
  MatSubspace b = span(QQ, 2, {Matrix::unit(QQ, 2, 1, 1)});
  CHECK(sum(a, b) == diagonal_subspace(QQ, 2));
  CHECK(sum(a, b).contains(Matrix::identity(QQ, 2)));
  CHECK(!sum(a, b).contains(Matrix::unit(QQ, 2, 0, 1)));
}

TEST_CASE("nt bound check") {
  for (std::size_t n = 2; n <= 4; ++n) {
    CHECK(nt_bound_check(symmetric_subspace(QQ, n)).bound_certified);
    CHECK(nt_bound_check(diagonal_subspace(QQ, n)).bound_certified);
  }
  auto r = nt_bound_check(span(QQ, 2, {Matrix::identity(QQ, 2), Matrix::unit(QQ, 2, 0, 0), Matrix::unit(QQ, 2, 0, 1)}));
  CHECK(!r.bound_certified);
  REQUIRE(r.nilpotent.has_value());
  CHECK(*r.nilpotent == Matrix::unit(QQ, 2, 0, 1));
}

TEST_CASE("normalize2 examples") {
  auto s2 = normalize2(symmetric_subspace(QQ, 2));
  REQUIRE(s2.kind == OutcomeKind::Certificate);
  CHECK(verify_certificate(symmetric_subspace(QQ, 2), s2.p));

  Matrix qm = mat(QQ, {{1, 1}, {0, 1}});
  MatSubspace v = conjugate(symmetric_subspace(QQ, 2), qm);
  auto c = normalize2(v);
  REQUIRE(c.kind == OutcomeKind::Certificate);
  CHECK(verify_certificate(v, c.p));

  MatSubspace nil = span(QQ, 2, {Matrix::identity(QQ, 2), Matrix::unit(QQ, 2, 0, 0), Matrix::unit(QQ, 2, 0, 1)});
  auto w = normalize2(nil);
  REQUIRE(w.kind == OutcomeKind::Witness);
  CHECK(verify_witness(nil, w.witness));

  auto fixture = [](FieldTag tag) {
    return span(tag, 2, {Matrix::identity(tag, 2), mat(tag, {{1, 0}, {0, 0}}), mat(tag, {{0, 2}, {1, 0}})});
  };
  auto overq = normalize2(fixture(QQ));
  REQUIRE(overq.kind == OutcomeKind::Witness);
  CHECK(verify_witness(fixture(QQ), overq.witness));
  CHECK(overq.witness_reason == "SpectrumNotInField");
  auto overr = normalize2(fixture(R));
  REQUIRE(overr.kind == OutcomeKind::Certificate);
  CHECK(verify_certificate(fixture(R), overr.p));

  MatSubspace no_identity = span(QQ, 2, {Matrix::unit(QQ, 2, 0, 0), Matrix::unit(QQ, 2, 0, 1), Matrix::unit(QQ, 2, 1, 0)});
  auto ni = normalize2(no_identity);
  REQUIRE(ni.kind == OutcomeKind::Witness);
  CHECK(verify_witness(no_identity, ni.witness));

  CHECK_THROWS_AS(normalize2(diagonal_subspace(QQ, 2)), Error);
}

TEST_CASE("finalisation examples") {
  auto s3 = finalisation(symmetric_subspace(R, 3));
  REQUIRE(s3.kind == OutcomeKind::Certificate);
  CHECK(s3.p == Matrix::identity(R, 3));

  Matrix d = Matrix::diagonal(R, {q(1), q(1), q(2)});
  MatSubspace v = conjugate(symmetric_subspace(R, 3), d);
  auto c = finalisation(v);
  REQUIRE(c.kind == OutcomeKind::Certificate);
  CHECK(verify_certificate(v, c.p));

  // u = 2 id: a square over RealAlg only.
  auto engineered = [](FieldTag tag) {
    std::vector<Matrix> gens;
    for (const auto& s : symmetric_subspace(tag, 2).basis()) gens.push_back(direct_sum(s, Matrix(tag, 1, 1)));
    gens.push_back(Matrix::unit(tag, 3, 2, 2));
    for (std::size_t i = 0; i < 2; ++i) {
      Matrix m(tag, 3, 3);
      m.set(2, i, q(1));
      m.set(i, 2, q(2));
      gens.push_back(m);
    }
    return span(tag, 3, gens);
  };
  auto overr = finalisation(engineered(R));
  REQUIRE(overr.kind == OutcomeKind::Certificate);
  CHECK(verify_certificate(engineered(R), overr.p));
  auto overq = finalisation(engineered(QQ));
  REQUIRE(overq.kind == OutcomeKind::Witness);
  CHECK(verify_witness(engineered(QQ), overq.witness));

  // Unequal row scalings: u is not scalar.
  std::vector<Matrix> gens;
  for (const auto& s : symmetric_subspace(R, 2).basis()) gens.push_back(direct_sum(s, Matrix(R, 1, 1)));
  gens.push_back(Matrix::unit(R, 3, 2, 2));
  for (std::size_t i = 0; i < 2; ++i) {
    Matrix m(R, 3, 3);
    m.set(2, i, q(1));
    m.set(i, 2, q(i == 0 ? 1 : 4));
    gens.push_back(m);
  }
  MatSubspace skew = span(R, 3, gens);
  auto sk = finalisation(skew);
  REQUIRE(sk.kind == OutcomeKind::Witness);
  CHECK(verify_witness(skew, sk.witness));

  try {
    finalisation(conjugate(symmetric_subspace(R, 3), mat(R, {{1, 0, 1}, {0, 1, 0}, {0, 0, 1}})));
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionViolated);
  }
}

TEST_CASE("normalize_maximal on conjugates of S_n") {
  std::mt19937_64 rng(99);
  for (std::size_t n = 3; n <= 4; ++n) {
    auto fixed = normalize_maximal(symmetric_subspace(R, n));
    REQUIRE(fixed.kind == OutcomeKind::Certificate);
    CHECK(verify_certificate(symmetric_subspace(R, n), fixed.p));
  }
  for (int t = 0; t < 4; ++t) {
    Matrix p = random_invertible(rng, R, 3);
    MatSubspace v = conjugate(symmetric_subspace(R, 3), p);
    auto out = normalize_maximal(v);
    REQUIRE(out.kind == OutcomeKind::Certificate);
    CHECK(verify_certificate(v, out.p));
    Matrix prod = Matrix::identity(R, 3);
    for (const auto& c : out.chain) prod = c.p * prod;
    CHECK(prod == out.p);
  }
}

TEST_CASE("normalize_maximal rejects sabotaged subspaces") {
  std::mt19937_64 rng(5);
  for (std::size_t n = 2; n <= 3; ++n) {
    for (int t = 0; t < 3; ++t) {
      auto basis = symmetric_subspace(R, n).basis();
      // Replace one off-diagonal symmetric element by E_ij.
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (!basis[k].is_diagonal()) {
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) basis[k].set(i, j, Real());
          }
          break;
        }
      }
      Matrix p = random_invertible(rng, R, n);
      Matrix pi = inverse(p);
      std::vector<Matrix> gens;
      for (const auto& b : basis) gens.push_back(p * b * pi);
      MatSubspace v = span(R, n, gens);
      auto out = normalize_maximal(v);
      CHECK(out.kind != OutcomeKind::Certificate);
      if (out.kind == OutcomeKind::Witness) CHECK(verify_witness(v, out.witness));
    }
  }
}

TEST_CASE("min intersection report") {
  MatSubspace s = symmetric_subspace(R, 3);
  auto cs = normalize_maximal(s);
  auto self = min_intersection_report(s, cs, s, cs);
  CHECK(self.dim == 6);
  CHECK(self.bound_holds);

  Matrix d = Matrix::diagonal(R, {q(1), q(2), q(3)});
  MatSubspace w = conjugate(s, inverse(d));
  auto cw = normalize_maximal(w);
  REQUIRE(cw.kind == OutcomeKind::Certificate);
  auto rep = min_intersection_report(s, cs, w, cw);
  CHECK(rep.dim == 3);
  CHECK(rep.conjugate_to_diagonal);

  NormalizationOutcome bogus;
  CHECK_THROWS_AS(min_intersection_report(s, bogus, w, cw), Error);
}
