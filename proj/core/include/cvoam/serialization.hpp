#pragma once

// JSON encodings.
//
//   CovarianceMatrix  {"order": ["Xc","Yc","Xp","Yp"], "matrix": [[4 reals] x 4]}
//   SqueezingSpec     {"V": v, "Vp": vp}
//   MultiplexedState  {"pairs": {"<l>": {"spec": {...}, "covariance": {...}}}}
//   CriteriaReport    {"nu", "entangled", "gAB", "gBA", "class"}

#include <nlohmann/json.hpp>

#include "cvoam/criteria.hpp"
#include "cvoam/gaussian.hpp"
#include "cvoam/tomography.hpp"

namespace cvoam {

void to_json(nlohmann::json& j, const CovarianceMatrix& cm);
void from_json(const nlohmann::json& j, CovarianceMatrix& cm);

void to_json(nlohmann::json& j, const SqueezingSpec& spec);
void from_json(const nlohmann::json& j, SqueezingSpec& spec);

void to_json(nlohmann::json& j, const MultiplexedState& state);
void from_json(const nlohmann::json& j, MultiplexedState& state);

void to_json(nlohmann::json& j, const CriteriaReport& report);
void from_json(const nlohmann::json& j, CriteriaReport& report);

void to_json(nlohmann::json& j, const VarianceSet& vs);

} // namespace cvoam
