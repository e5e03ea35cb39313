#pragma once

#include "diagkit/matrix.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace diagkit {

/// Linear endomorphism of M_n: vec(f(M)) = coeffs * vec(M), with vec the
/// row-major vectorization (basis E_11, E_12, ..., E_nn).
class MatrixMap {
 public:
  MatrixMap() = default;
  MatrixMap(std::size_t n, Matrix coeffs);

  FieldTag field() const noexcept { return coeffs_.field(); }
  std::size_t n() const noexcept { return n_; }
  const Matrix& coeffs() const noexcept { return coeffs_; }

  static MatrixMap identity(FieldTag tag, std::size_t n);
  static MatrixMap transpose_map(FieldTag tag, std::size_t n);
  /// Matrix of M -> g(M) read off the basis E_ij.
  static MatrixMap from_function(FieldTag tag, std::size_t n, const std::function<Matrix(const Matrix&)>& g);

  friend bool operator==(const MatrixMap& a, const MatrixMap& b) { return a.n_ == b.n_ && a.coeffs_ == b.coeffs_; }

 private:
  std::size_t n_ = 0;
  Matrix coeffs_;
};

/// Throws SizeMismatch.
Matrix apply_map(const MatrixMap& f, const Matrix& m);

/// M -> lambda(M) I + mu P M P^-1, lambda given as a 1 x n^2 row.
/// Throws SingularP.
MatrixMap make_phi(const Matrix& lambda_row, const Matrix& p, const Real& mu);
/// M -> lambda(M) I + mu P M^T P^-1. Throws SingularP.
MatrixMap make_psi(const Matrix& lambda_row, const Matrix& p, const Real& mu);

/// The trace form as a 1 x n^2 row.
Matrix trace_row(FieldTag tag, std::size_t n);

enum class PreserverKind { Phi, Psi, NotPhiPsi, SingularRejected, Inconclusive };
std::string_view to_string(PreserverKind k);

struct PreserverParams {
  PreserverKind kind = PreserverKind::Phi;
  Matrix lambda_row;
  Matrix p;
  Real mu;
};

struct PreserverClass {
  PreserverKind kind = PreserverKind::Inconclusive;
  // Phi / Psi
  Matrix lambda_row;
  Matrix p;  // first nonzero entry (row-major) is 1
  Real mu;
  bool automorphism = false;  // mu != 0 and lambda(I) != -mu
  bool verified = false;      // reconstruction equals the input exactly
  std::optional<PreserverParams> alternate;  // the Psi form of a 2x2 Phi map
  // NotPhiPsi
  std::optional<Matrix> witness;
  std::string reason;
  // SingularRejected: A in ker f, B diagonalizable, A + B not
  Matrix kernel_elem;
  Matrix pair_b;
  Matrix pair_sum;
  bool trace_adjusted = false;  // f(I) = 0 was handled by adding the trace form
};

/// Classifies an invertible map as phi or psi with verified parameters.
/// Throws SingularMap.
PreserverClass classify(const MatrixMap& f, std::size_t refute_trials = 200, std::uint64_t seed = 0);

struct RefutationResult {
  bool found = false;
  Matrix witness;      // diagonalizable M with f(M) not diagonalizable
  std::size_t trial = 0;
};

/// Samples M = Q Diag(d) Q^-1 (Q entries in {-2..2}, d in {-3..3}) and
/// returns the first M whose image is not diagonalizable.
RefutationResult refute_preservation(const MatrixMap& f, std::size_t trials, std::uint64_t seed);

struct PairViolation {
  bool found = false;
  Matrix a;
  Matrix b;
  std::size_t trial = 0;
  std::string reason;
};

/// Samples simultaneously diagonal pairs in a common random frame and checks
/// that their images are again simultaneously diagonalizable.
PairViolation pair_preservation_check(const MatrixMap& f, std::size_t trials, std::uint64_t seed);

/// Classification under the two-sided hypothesis "f(M) diagonalizable iff M
/// is". Maps with a nontrivial kernel are rejected with an explicit pair.
PreserverClass strong_classify(const MatrixMap& f, std::size_t refute_trials = 200, std::uint64_t seed = 0);

/// Checks a SingularRejected pair against f.
bool verify_singular_pair(const MatrixMap& f, const PreserverClass& c);

}  // namespace diagkit
