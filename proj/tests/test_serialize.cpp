#include "diagkit/errors.hpp"
#include "diagkit/field.hpp"
#include "diagkit/serialize.hpp"

#include <doctest.h>

using namespace diagkit;

namespace {
constexpr FieldTag R = FieldTag::RealAlg;
constexpr FieldTag QQ = FieldTag::Q;
Real q(long p, long d = 1) { return Real(Rational(p, d)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}
}  // namespace

TEST_CASE("element round trip") {
  CHECK(element_to_json(q(-3, 4)) == "-3/4");
  CHECK(element_to_json(q(5)) == "5");
  CHECK(element_from_json("-3/4", QQ) == q(-3, 4));
  CHECK(element_from_json(7, QQ) == q(7));

  Real s2 = sqrt_nonneg(q(2), R);
  Json j = element_to_json(s2);
  REQUIRE(j.is_object());
  CHECK(j["minpoly"] == Json::array({"-2", "0", "1"}));
  CHECK(compare(element_from_json(j, R), s2, R) == Ordering::EQ);

  Real mixed = s2 + sqrt_nonneg(q(3), R);
  CHECK(element_from_json(element_to_json(mixed), R) == mixed);
  Real h = hypot(q(1), q(2), R);
  CHECK(element_from_json(element_to_json(h), R) == h);
  Real cube = isolate_roots(IntPoly{-2, 0, 0, 1}).front();
  CHECK(element_from_json(element_to_json(cube), R) == cube);
  // Rational roots collapse.
  CHECK(element_from_json(Json{{"minpoly", {"-1", "1"}}, {"lo", "0"}, {"hi", "2"}}, QQ) == q(1));

  CHECK(code_of([&] { element_from_json(j, QQ); }) == ErrorCode::FieldMismatch);
  CHECK(code_of([] { element_from_json("1/0", QQ); }) == ErrorCode::Parse);
  CHECK(code_of([] { element_from_json("x", QQ); }) == ErrorCode::Parse);
  CHECK(code_of([] { element_from_json(Json::array(), QQ); }) == ErrorCode::Parse);
  CHECK(code_of([] { element_from_json(Json{{"minpoly", {"-2", "0", "1"}}, {"lo", "0"}}, R); }) == ErrorCode::Parse);
  {
    MaxDegreeScope scope(2);
    Json c{{"minpoly", {"-2", "0", "0", "1"}}, {"lo", "1"}, {"hi", "2"}};
    CHECK(code_of([&] { element_from_json(c, R); }) == ErrorCode::DegreeOverflow);
  }
}

TEST_CASE("structured round trip") {
  Real s2 = sqrt_nonneg(q(2), R);
  Matrix m = Matrix::from_rows(R, {{q(1, 2), s2}, {q(0), -s2}});
  Json jm = matrix_to_json(m);
  CHECK(jm["field"] == "RealAlg");
  CHECK(jm["rows"] == 2);
  CHECK(matrix_from_json(jm) == m);
  CHECK(matrix_from_json(matrix_to_json(Matrix::identity(QQ, 3)), R) == Matrix::identity(R, 3));

  MatSubspace s = symmetric_subspace(QQ, 3);
  CHECK(subspace_from_json(subspace_to_json(s)) == s);

  MatrixMap t = MatrixMap::transpose_map(QQ, 2);
  Json jt = map_to_json(t);
  CHECK(jt["basis_order"] == "row-major-Eij");
  CHECK(map_from_json(jt) == t);
  jt["basis_order"] = "column-major";
  CHECK(code_of([&] { map_from_json(jt); }) == ErrorCode::Parse);

  Json bad = matrix_to_json(Matrix::identity(QQ, 2));
  bad["rows"] = 3;
  CHECK(code_of([&] { matrix_from_json(bad); }) == ErrorCode::Parse);
  bad = matrix_to_json(Matrix::identity(QQ, 2));
  bad["field"] = "C";
  CHECK(code_of([&] { matrix_from_json(bad); }) == ErrorCode::Parse);
}

TEST_CASE("report documents") {
  auto out = normalize_maximal(symmetric_subspace(R, 2));
  Json j = outcome_to_json(out);
  CHECK(j["kind"] == "Certificate");
  CHECK(j["chain"].is_array());
  for (const auto& c : j["chain"]) CHECK(c["stage"].is_string());

  auto d = decision_to_json(is_diagonalizable(Matrix::from_rows(QQ, {{q(0), q(1)}, {q(0), q(0)}})));
  CHECK(d["diagonalizable"] == false);
  CHECK(d["reason"] == "GeometricDeficiency");

  auto p = preserver_to_json(classify(MatrixMap::identity(QQ, 3)));
  CHECK(p["kind"] == "Phi");
  CHECK(p["verified"] == true);
  CHECK(p["mu"] == "1");
}
