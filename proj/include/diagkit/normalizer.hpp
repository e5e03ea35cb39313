#pragma once

#include "diagkit/subspace.hpp"

#include <string>
#include <vector>

namespace diagkit {

enum class OutcomeKind { Certificate, Witness, Obstruction };
std::string_view to_string(OutcomeKind k);

/// One elementary step V <- P V P^-1.
struct Conjugator {
  std::string stage;
  Matrix p;
};

struct NormalizationOutcome {
  OutcomeKind kind = OutcomeKind::Obstruction;
  Matrix p;                        // Certificate: P V P^-1 = S_n
  std::vector<Conjugator> chain;   // applied first to last; P is their product
  Matrix witness;                  // Witness: member of V, not diagonalizable
  std::string witness_reason;      // why the witness fails
  std::string stage;               // Witness / Obstruction locus
  std::string detail;
};

/// Base case n = 2, dim V = 3. Throws WrongDimension.
NormalizationOutcome normalize2(const MatSubspace& v);

/// V of dimension n(n+1)/2 containing E_nn, whose members with zero last row
/// are [[S, ?], [0, 0]] with S symmetric, one for each S. Throws WrongDimension
/// and PreconditionViolated(stage).
NormalizationOutcome finalisation(const MatSubspace& v);

/// Decides whether a subspace of dimension n(n+1)/2 is conjugate to S_n,
/// returning a verified conjugator or a verified non-diagonalizable member.
/// Throws WrongDimension.
NormalizationOutcome normalize_maximal(const MatSubspace& v);

/// True when P V P^-1 = S_n (both inclusions, by echelon equality).
bool verify_certificate(const MatSubspace& v, const Matrix& p);
/// True when the witness lies in V and is not diagonalizable over the field.
bool verify_witness(const MatSubspace& v, const Matrix& m);

struct IntersectionReport {
  std::size_t dim = 0;
  bool bound_holds = false;  // dim >= n
  bool conjugate_to_diagonal = false;
  Matrix r;                  // R (V ∩ W) R^-1 = D_n when conjugate_to_diagonal
};

/// Both outcomes must be verified Certificates for their subspaces
/// (MissingCertificate otherwise).
IntersectionReport min_intersection_report(const MatSubspace& v, const NormalizationOutcome& cert_v,
                                           const MatSubspace& w, const NormalizationOutcome& cert_w);

}  // namespace diagkit
