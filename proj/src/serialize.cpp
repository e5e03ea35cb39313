#include "diagkit/serialize.hpp"

#include "diagkit/errors.hpp"
#include "diagkit/field.hpp"

namespace diagkit {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::Parse, what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::size_t size_member(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_number_unsigned()) parse_error(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

Rational rational_from(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  parse_error("expected a rational string, got " + j.dump());
}

FieldTag tag_from(const Json& j, std::optional<FieldTag> field) {
  if (field) return *field;
  const Json& t = member(j, "field");
  if (!t.is_string()) parse_error("'field' must be a string");
  try {
    return parse_field_tag(t.get<std::string>());
  } catch (const Error&) {
    parse_error("unknown field '" + t.get<std::string>() + "'");
  }
}

}  // namespace

Json element_to_json(const Real& x) {
  if (auto r = x.to_rational()) return to_string(*r);
  AlgebraicReal a = to_algebraic(x);
  Json poly = Json::array();
  for (const auto& c : a.defining) poly.push_back(c.get_str());
  return Json{{"minpoly", poly}, {"lo", to_string(a.lo)}, {"hi", to_string(a.hi)}};
}

Real element_from_json(const Json& j, FieldTag tag) {
  Real x;
  if (j.is_string() || j.is_number_integer()) {
    x = Real(rational_from(j));
  } else if (j.is_object()) {
    AlgebraicReal a;
    const Json& poly = member(j, "minpoly");
    if (!poly.is_array()) parse_error("'minpoly' must be an array");
    for (const auto& c : poly) {
      Rational r = rational_from(c);
      if (r.get_den() != 1) parse_error("minpoly coefficients must be integers");
      a.defining.push_back(r.get_num());
    }
    a.lo = rational_from(member(j, "lo"));
    a.hi = rational_from(member(j, "hi"));
    x = from_algebraic(a);
  } else {
    parse_error("malformed field element " + j.dump());
  }
  if (!belongs_to(x, tag)) throw Error(ErrorCode::FieldMismatch, "element " + j.dump() + " is not in " + std::string(to_string(tag)));
  return x;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(element_to_json(x));
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(vector_to_json(m.row(r)));
  return Json{{"field", to_string(m.field())}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Matrix matrix_from_json(const Json& j, std::optional<FieldTag> field) {
  FieldTag tag = tag_from(j, field);
  std::size_t rows = size_member(j, "rows");
  std::size_t cols = size_member(j, "cols");
  const Json& e = member(j, "entries");
  if (!e.is_array() || e.size() != rows) parse_error("'entries' must have 'rows' rows");
  Matrix m(tag, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!e[r].is_array() || e[r].size() != cols) parse_error("row " + std::to_string(r) + " must have 'cols' entries");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, element_from_json(e[r][c], tag));
  }
  return m;
}

Json subspace_to_json(const MatSubspace& v) {
  Json basis = Json::array();
  for (const auto& b : v.basis()) basis.push_back(matrix_to_json(b));
  return Json{{"field", to_string(v.field())}, {"n", v.n()}, {"basis", basis}};
}

MatSubspace subspace_from_json(const Json& j, std::optional<FieldTag> field) {
  FieldTag tag = tag_from(j, field);
  std::size_t n = size_member(j, "n");
  const Json& basis = member(j, "basis");
  if (!basis.is_array()) parse_error("'basis' must be an array");
  std::vector<Matrix> gens;
  for (const auto& b : basis) {
    Matrix m = matrix_from_json(b, tag);
    if (m.rows() != n || m.cols() != n) parse_error("basis matrices must be n x n");
    gens.push_back(m);
  }
  return MatSubspace(tag, n, gens);
}

Json map_to_json(const MatrixMap& f) {
  return Json{{"field", to_string(f.field())},
              {"n", f.n()},
              {"coeffs", matrix_to_json(f.coeffs())},
              {"basis_order", "row-major-Eij"}};
}

MatrixMap map_from_json(const Json& j, std::optional<FieldTag> field) {
  FieldTag tag = tag_from(j, field);
  std::size_t n = size_member(j, "n");
  if (j.contains("basis_order") && j.at("basis_order") != "row-major-Eij") {
    parse_error("unsupported basis_order " + j.at("basis_order").dump());
  }
  Matrix c = matrix_from_json(member(j, "coeffs"), tag);
  if (c.rows() != n * n || c.cols() != n * n) parse_error("'coeffs' must be n^2 x n^2");
  return MatrixMap(n, c);
}

Json decision_to_json(const DiagDecision& d) {
  Json out{{"diagonalizable", d.diagonalizable}};
  if (d.diagonalizable) {
    out["eigenvalues"] = vector_to_json(d.eigen.values);
    Json dims = Json::array();
    for (const auto& b : d.eigen.bases) dims.push_back(b.size());
    out["geometric_dims"] = dims;
    out["q"] = matrix_to_json(d.q);
    out["d"] = matrix_to_json(d.d);
  } else {
    out["reason"] = to_string(d.reason);
    out["eigenvalues_in_field"] = vector_to_json(d.eigen.values);
  }
  return out;
}

Json outcome_to_json(const NormalizationOutcome& o) {
  Json chain = Json::array();
  for (const auto& c : o.chain) chain.push_back(Json{{"stage", c.stage}, {"p", matrix_to_json(c.p)}});
  Json out{{"kind", to_string(o.kind)}};
  switch (o.kind) {
    case OutcomeKind::Certificate:
      out["p"] = matrix_to_json(o.p);
      break;
    case OutcomeKind::Witness:
      out["witness"] = matrix_to_json(o.witness);
      out["witness_reason"] = o.witness_reason;
      out["stage"] = o.stage;
      break;
    case OutcomeKind::Obstruction:
      out["stage"] = o.stage;
      break;
  }
  out["detail"] = o.detail;
  out["chain"] = chain;
  return out;
}

Json preserver_to_json(const PreserverClass& c) {
  Json out{{"kind", to_string(c.kind)}};
  auto params = [](PreserverKind kind, const Matrix& lambda, const Matrix& p, const Real& mu) {
    return Json{{"kind", to_string(kind)},
                {"lambda", matrix_to_json(lambda)},
                {"p", matrix_to_json(p)},
                {"mu", element_to_json(mu)}};
  };
  switch (c.kind) {
    case PreserverKind::Phi:
    case PreserverKind::Psi:
      out["lambda"] = matrix_to_json(c.lambda_row);
      out["p"] = matrix_to_json(c.p);
      out["mu"] = element_to_json(c.mu);
      out["automorphism"] = c.automorphism;
      if (c.alternate) out["alternate"] = params(c.alternate->kind, c.alternate->lambda_row, c.alternate->p, c.alternate->mu);
      break;
    case PreserverKind::NotPhiPsi:
      out["witness"] = c.witness ? matrix_to_json(*c.witness) : Json(nullptr);
      out["reason"] = c.reason;
      break;
    case PreserverKind::SingularRejected:
      out["kernel_element"] = matrix_to_json(c.kernel_elem);
      out["b"] = matrix_to_json(c.pair_b);
      out["a_plus_b"] = matrix_to_json(c.pair_sum);
      break;
    case PreserverKind::Inconclusive:
      out["reason"] = c.reason;
      break;
  }
  out["verified"] = c.verified;
  out["trace_adjusted"] = c.trace_adjusted;
  return out;
}

Json symmetrizability_to_json(const SymmetrizabilityResult& r) {
  Json space = Json::array();
  for (const auto& g : r.space) space.push_back(matrix_to_json(g));
  Json out{{"kind", to_string(r.kind)}};
  if (r.kind == SymmetrizabilityKind::FeasibleWitness) out["g"] = matrix_to_json(r.g);
  if (r.kind == SymmetrizabilityKind::Infeasible) out["isotropic"] = vector_to_json(r.isotropic);
  out["admissible_space"] = space;
  return out;
}

Json svd_to_json(const SvdTriple& s) {
  return Json{{"o", matrix_to_json(s.o)}, {"d", matrix_to_json(s.d)}, {"u", matrix_to_json(s.u)}};
}

Json intersection_to_json(const IntersectionReport& r) {
  Json out{{"dim", r.dim}, {"bound_holds", r.bound_holds}, {"conjugate_to_diagonal", r.conjugate_to_diagonal}};
  if (r.conjugate_to_diagonal) out["r"] = matrix_to_json(r.r);
  return out;
}

}  // namespace diagkit
