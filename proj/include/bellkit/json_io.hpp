#pragma once

#include <json.hpp>

#include "bellkit/behavior.hpp"
#include "bellkit/expression.hpp"
#include "bellkit/seesaw.hpp"
#include "bellkit/settings.hpp"
#include "bellkit/states.hpp"
#include "bellkit/tensor.hpp"
#include "bellkit/visibility.hpp"
#include "bellkit/wwzb.hpp"

// JSON forms of the public data types. Layouts are stable: files written by
// one build parse bit-identically in the next.

namespace bellkit {

using Json = nlohmann::json;

// [{"indices": [mu1..muN], "value": v}, ...] for |v| > 1e-12, sorted
// lexicographically by indices.
Json tensor_to_json(const CorrelationTensor& tensor);

// {"parties": N, "settings": S, "terms": [{"pattern": [...], "coeff": c}]}
// with patterns in lexicographic order.
Json expression_to_json(const BellExpression& expr);
BellExpression expression_from_json(const Json& j);

// {"num_parties": N, "num_settings": S, "vectors": [[[x,y,z], ...], ...]}
Json settings_to_json(const SettingsAssignment& settings);
SettingsAssignment settings_from_json(const Json& j);

// {"k": k, "value": v, "admits_model": b, "planes": [[[ux,uy,uz],[vx,vy,vz]], ...]}
Json wwzb_result_to_json(const WwzbResult& result, int k);

Json seesaw_result_to_json(const SeesawResult& result);

// {"p_crit": v, "settings": ..., "weights": [{"vertex": [g1..gN], "weight": w}]}
Json visibility_result_to_json(const VisibilityResult& result);

// {"num_qubits": N, "entries": [[re, im], ...]} row-major.
Json density_matrix_to_json(const DensityMatrix& rho);
DensityMatrix density_matrix_from_json(const Json& j);

}  // namespace bellkit
