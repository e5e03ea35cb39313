#pragma once

#include "diagkit/linalg.hpp"
#include "diagkit/normalizer.hpp"
#include "diagkit/orthosvd.hpp"
#include "diagkit/preservers.hpp"
#include "diagkit/subspace.hpp"
#include "diagkit/symmetrize.hpp"

#include <json.hpp>

#include <optional>

namespace diagkit {

using Json = nlohmann::ordered_json;

// Field elements: "p" or "p/q" for rationals, otherwise
// {"minpoly": [c0, ..., cd], "lo": "p/q", "hi": "p/q"}.
Json element_to_json(const Real& x);
/// Throws Parse, DegreeOverflow, FieldMismatch.
Real element_from_json(const Json& j, FieldTag tag);

Json vector_to_json(const Vector& v);

Json matrix_to_json(const Matrix& m);
/// `field` overrides the tag stored in the document.
Matrix matrix_from_json(const Json& j, std::optional<FieldTag> field = std::nullopt);

Json subspace_to_json(const MatSubspace& v);
MatSubspace subspace_from_json(const Json& j, std::optional<FieldTag> field = std::nullopt);

Json map_to_json(const MatrixMap& f);
MatrixMap map_from_json(const Json& j, std::optional<FieldTag> field = std::nullopt);

Json decision_to_json(const DiagDecision& d);
Json outcome_to_json(const NormalizationOutcome& o);
Json preserver_to_json(const PreserverClass& c);
Json symmetrizability_to_json(const SymmetrizabilityResult& r);
Json svd_to_json(const SvdTriple& s);
Json intersection_to_json(const IntersectionReport& r);

}  // namespace diagkit
