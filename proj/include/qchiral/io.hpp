#pragma once

#include <string>

#include "qchiral/states.hpp"

#include <json.hpp>

namespace qchiral {

// {"rho": [[[re,im], ...x4], ...x4]}; throws ParseError on malformed input,
// plus the usual density-matrix validation errors
DensityMatrix load_state_json(const std::string& path);
DensityMatrix state_from_json(const nlohmann::json& j);

nlohmann::json state_to_json(const DensityMatrix& rho);

// full single-state report: bloch data, purity, sinisterness via both
// routes, chirality classification, concurrence, R spectrum
nlohmann::json analysis_report(const DensityMatrix& rho);

}  // namespace qchiral
