#include "diagkit/linalg.hpp"
#include "diagkit/symmetrize.hpp"

#include <doctest.h>

using namespace diagkit;

namespace {
constexpr FieldTag R = FieldTag::RealAlg;
Real q(long p, long d = 1) { return Real(Rational(p, d)); }
}  // namespace

TEST_CASE("positive definiteness") {
  CHECK(is_positive_definite(Matrix::identity(R, 3)));
  CHECK(is_positive_definite(Matrix::from_rows(R, {{q(2), q(1)}, {q(1), q(2)}})));
  CHECK(!is_positive_definite(Matrix::from_rows(R, {{q(1), q(2)}, {q(2), q(1)}})));
  CHECK(!is_positive_definite(Matrix::diagonal(R, {q(1), q(0)})));
  CHECK(!is_positive_definite(Matrix::from_rows(R, {{q(1), q(1)}, {q(0), q(1)}})));
}

TEST_CASE("symmetrizability examples") {
  auto s = symmetrizability_obstruction(symmetric_subspace(R, 3));
  REQUIRE(s.kind == SymmetrizabilityKind::FeasibleWitness);
  CHECK(s.g == Matrix::identity(R, 3));

  auto z = symmetrizability_obstruction(MatSubspace(R, 3, {}));
  REQUIRE(z.kind == SymmetrizabilityKind::FeasibleWitness);
  CHECK(z.g == Matrix::identity(R, 3));

  // Conjugating S_2 by Diag(1,2) needs G = Diag(1,1/4) up to scale.
  Matrix d = Matrix::diagonal(R, {q(1), q(2)});
  auto c = symmetrizability_obstruction(conjugate(symmetric_subspace(R, 2), d));
  REQUIRE(c.kind == SymmetrizabilityKind::FeasibleWitness);
  CHECK(c.g(0, 1).is_zero());
  CHECK(c.g(0, 0) == q(4) * c.g(1, 1));

  // A^T G = G A with A = Diag(0,1,-1), B = E12+E23+E32 forces G = g Diag(0,1,1).
  auto [a, b] = counterexample_pair(R);
  auto ob = symmetrizability_obstruction(span(R, 3, {a, b}));
  REQUIRE(ob.kind == SymmetrizabilityKind::Infeasible);
  CHECK(ob.isotropic == Vector{q(1), q(0), q(0)});
  REQUIRE(ob.space.size() == 1);
  Matrix g = ob.space[0];
  CHECK(g == g(1, 1) * Matrix::diagonal(R, {q(0), q(1), q(1)}));

  // A nilpotent admits no symmetrizer: e1 is isotropic for every admissible G.
  auto nil = symmetrizability_obstruction(span(R, 2, {Matrix::unit(R, 2, 0, 1)}));
  CHECK(nil.kind == SymmetrizabilityKind::Infeasible);
}

TEST_CASE("counterexample fixture") {
  auto [a, b] = counterexample_pair(R);
  EigenData e = eigendata(q(3) * a + q(4) * b);
  CHECK(e.values == std::vector<Real>{q(-5), q(0), q(5)});
  // X^3 - 2X for a = b = 1.
  Matrix m = a + b;
  EigenData e11 = eigendata(m);
  REQUIRE(e11.values.size() == 3);
  CHECK(e11.values[2] * e11.values[2] == q(2));
  CHECK(e11.values[0] == -e11.values[2]);

  auto rep = counterexample_check();
  CHECK(rep.grid_points == 48);
  CHECK(rep.spectrum_failures.empty());
  CHECK(rep.passed);
}
