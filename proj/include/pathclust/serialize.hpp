#pragma once

#include "pathclust/changepoint.hpp"
#include "pathclust/evaluation.hpp"
#include "pathclust/geometry.hpp"

#include <json.hpp>

namespace pathclust {

// {"start": int, "order": [int], "gaps": [float]}
void to_json(nlohmann::json& j, const HamiltonianPath& p);
void from_json(const nlohmann::json& j, HamiltonianPath& p);

// {"detector": str, "positions": [int], "scores": [float], "params": {...}}
// plus "directions" for the CUSUM detectors. Detector parameters are not
// stored on the set itself; serialize_changepoints takes them alongside.
nlohmann::json serialize_changepoints(const ChangePointSet& cps,
                                      const nlohmann::json& params);
ChangePointSet deserialize_changepoints(const nlohmann::json& j);

void to_json(nlohmann::json& j, const ClusterLabeling& l);
void from_json(const nlohmann::json& j, ClusterLabeling& l);

void to_json(nlohmann::json& j, const AmiReport& r);

}  // namespace pathclust
