#include "diagkit/symmetrize.hpp"

#include "diagkit/field.hpp"
#include "diagkit/linalg.hpp"

namespace diagkit {

namespace {

bool combos(const std::vector<Matrix>& basis, std::size_t cap, Matrix& out) {
  const std::vector<long> values = {0, 1, -1, 2, -2};
  const std::size_t r = basis.size();
  std::vector<std::size_t> idx(r, 0);
  for (std::size_t tried = 0; tried < cap; ++tried) {
    std::size_t pos = 0;
    while (pos < r && ++idx[pos] == values.size()) idx[pos++] = 0;
    if (pos == r) return false;
    Matrix m(basis[0].field(), basis[0].rows(), basis[0].cols());
    for (std::size_t i = 0; i < r; ++i) {
      if (values[idx[i]] != 0) m = m + Real(values[idx[i]]) * basis[i];
    }
    if (is_positive_definite(m)) {
      out = m;
      return true;
    }
  }
  return false;
}

bool isotropic_for_all(const std::vector<Matrix>& space, const Vector& x) {
  for (const auto& g : space) {
    if (!dot(x, g * x).is_zero()) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(SymmetrizabilityKind k) {
  switch (k) {
    case SymmetrizabilityKind::FeasibleWitness: return "FeasibleWitness";
    case SymmetrizabilityKind::Infeasible: return "Infeasible";
    case SymmetrizabilityKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

bool is_positive_definite(const Matrix& g) {
  if (!g.is_symmetric()) return false;
  for (std::size_t k = 1; k <= g.rows(); ++k) {
    if (!(determinant(g.block(0, 0, k, k)) > Real())) return false;
  }
  return true;
}

SymmetrizabilityResult symmetrizability_obstruction(const MatSubspace& v) {
  const FieldTag tag = v.field();
  const std::size_t n = v.n();
  const std::vector<Matrix> basis = v.basis();
  SymmetrizabilityResult out;
  out.space = kernel_of_map(symmetric_subspace(tag, n), [&](const Matrix& g) {
    Vector r;
    for (const auto& a : basis) {
      Vector c = vectorize(a.transpose() * g - g * a);
      r.insert(r.end(), c.begin(), c.end());
    }
    return r;
  });

  MatSubspace admissible(tag, n, out.space);
  Matrix id = Matrix::identity(tag, n);
  if (admissible.contains(id)) {
    out.kind = SymmetrizabilityKind::FeasibleWitness;
    out.g = id;
    return out;
  }
  if (!out.space.empty() && combos(out.space, 4096, out.g)) {
    out.kind = SymmetrizabilityKind::FeasibleWitness;
    return out;
  }

  std::vector<Vector> probes;
  for (std::size_t i = 0; i < n; ++i) probes.push_back(id.column(i));
  for (const auto& a : basis) {
    for (const auto& b : eigendata(a).bases) probes.insert(probes.end(), b.begin(), b.end());
  }
  for (const auto& x : probes) {
    if (isotropic_for_all(out.space, x)) {
      out.kind = SymmetrizabilityKind::Infeasible;
      out.isotropic = x;
      return out;
    }
  }
  out.kind = SymmetrizabilityKind::Inconclusive;
  return out;
}

std::pair<Matrix, Matrix> counterexample_pair(FieldTag tag) {
  Matrix a = Matrix::diagonal(tag, {Real(0), Real(1), Real(-1)});
  Matrix b(tag, 3, 3);
  b.set(0, 1, Real(1));
  b.set(1, 2, Real(1));
  b.set(2, 1, Real(1));
  return {a, b};
}

CounterexampleReport counterexample_check() {
  const FieldTag tag = FieldTag::RealAlg;
  auto [a, b] = counterexample_pair(tag);
  CounterexampleReport rep;
  for (long s = -3; s <= 3; ++s) {
    for (long t = -3; t <= 3; ++t) {
      if (s == 0 && t == 0) continue;
      ++rep.grid_points;
      Real h = hypot(Real(s), Real(t), tag);
      EigenData e = eigendata(Real(s) * a + Real(t) * b);
      bool ok = e.values.size() == 3 && e.values[0] == -h && e.values[1].is_zero() && e.values[2] == h;
      for (const auto& basis : e.bases) ok = ok && basis.size() == 1;
      if (!ok) rep.spectrum_failures.emplace_back(s, t);
    }
  }
  rep.obstruction = symmetrizability_obstruction(span(tag, 3, {a, b}));
  Vector e1 = Matrix::identity(tag, 3).column(0);
  rep.passed = rep.spectrum_failures.empty() && rep.obstruction.kind == SymmetrizabilityKind::Infeasible &&
               rep.obstruction.isotropic == e1;
  return rep;
}

}  // namespace diagkit
