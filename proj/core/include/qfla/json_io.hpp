#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

#include "qfla/automorphisms.hpp"
#include "qfla/derivations.hpp"
#include "qfla/iso.hpp"
#include "qfla/lie_algebra.hpp"
#include "qfla/quasi_qn.hpp"

// JSON persistence. Scalars are always "p/q" strings (or "p"); integers are
// also accepted on input. Parse failures throw ParseError naming the field.
namespace qfla::json {

using nlohmann::json;

json to_json(const Scalar& s);
json to_json(const Vector& v);
json to_json(const Matrix& m);  // array of rows

Scalar scalar_from(const json& j, const std::string& field);
Vector vector_from(const json& j, const std::string& field);
Matrix matrix_from(const json& j, const std::string& field);

/// {"n", "m", "r", "B"} with B given as r rows of m - r entries.
json spec_to_json(const QuasiQnSpec& spec);
QuasiQnSpec spec_from_json(const json& j);

/// {"dim", "labels", "brackets": [{"i", "j", "value": [[k, "c"], ...]}]}, plus
/// "spec" when the algebra was built from one.
json algebra_to_json(const LieAlgebra& l, const std::optional<QuasiQnSpec>& spec = std::nullopt);

struct LoadedAlgebra {
  LieAlgebra algebra;
  std::optional<QuasiQnSpec> spec;
};

/// Accepts algebra JSON or bare spec JSON. When both brackets and a spec are
/// present they must agree.
LoadedAlgebra algebra_from_json(const json& j);

/// {"images": {"e_{s,0}": [...], "e_{s,1}": [...]}} with dense coordinate
/// arrays of length dim.
json candidate_to_json(const QuasiQnSpec& spec, const AutCandidate& c);
AutCandidate candidate_from_json(const QuasiQnSpec& spec, const json& j);

json related_to_json(const RelatedMatrix& rel);
json verdict_to_json(const AutVerdict& v);
json verdict_to_json(const DerVerdict& v);
json iso_to_json(const IsoVerdict& v);

/// Sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

}  // namespace qfla::json
