#pragma once

#include "diagkit/subspace.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace diagkit {

enum class SymmetrizabilityKind { FeasibleWitness, Infeasible, Inconclusive };
std::string_view to_string(SymmetrizabilityKind k);

struct SymmetrizabilityResult {
  SymmetrizabilityKind kind = SymmetrizabilityKind::Inconclusive;
  Matrix g;                    // FeasibleWitness: positive definite, A^T G = G A on V
  Vector isotropic;            // Infeasible: x^T G x = 0 for every admissible G
  std::vector<Matrix> space;   // basis of the admissible symmetric G
};

/// Sound but incomplete test for a positive definite G with A^T G = G A for
/// all A in V.
SymmetrizabilityResult symmetrizability_obstruction(const MatSubspace& v);

/// Leading principal minors, exact.
bool is_positive_definite(const Matrix& g);

struct CounterexampleReport {
  std::size_t grid_points = 0;
  std::vector<std::pair<long, long>> spectrum_failures;
  SymmetrizabilityResult obstruction;
  bool passed = false;  // all spectra match and the obstruction is Infeasible(e1)
};

/// A = Diag(0,1,-1), B = E12 + E23 + E32.
std::pair<Matrix, Matrix> counterexample_pair(FieldTag tag);

/// For a, b in {-3..3}, (a,b) != 0: the spectrum of aA + bB is {-h, 0, h} with
/// h = hypot(a,b) and 1-dimensional eigenspaces; then span{A,B} must be
/// Infeasible with isotropic vector e1.
CounterexampleReport counterexample_check();

}  // namespace diagkit
