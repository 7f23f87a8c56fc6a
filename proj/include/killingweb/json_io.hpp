#pragma once

#include "killingweb/pipeline.hpp"

#include <json.hpp>

#include <string>

namespace kw {

inline constexpr const char* kSchemaTag = "killing-web/1";

nlohmann::json rational_to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

/// Canonical sorted term list: [{"exps":[...],"coef":"p/q"},...], leading term
/// first under the graded-lex order.
nlohmann::json poly_to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j, const VarsPtr& vars);

nlohmann::json kt_to_json(const KTParams& k);
KTParams kt_from_json(const nlohmann::json& j);
nlohmann::json kv_to_json(const KVParams& v);
KVParams kv_from_json(const nlohmann::json& j);

nlohmann::json isometry_to_json(const IsometryD& h);
nlohmann::json chart_to_json(const SeparableChart& c);
nlohmann::json report_to_json(const ClassificationReport& r);
nlohmann::json separability_to_json(const SeparabilityReport& r);

/// Invariant vectors applicable to a tensor: the full Δ's and Ξ's always, the
/// subspace pairs when the tensor is in the corresponding normal form.
nlohmann::json invariants_to_json(const KTParams& k);
nlohmann::json kv_invariants_to_json(const KVParams& v);

}  // namespace kw
