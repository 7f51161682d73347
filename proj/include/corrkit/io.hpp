#pragma once

#include "corrkit/partitions.hpp"
#include "corrkit/state.hpp"

#include <json.hpp>

#include <string>

namespace corrkit {

// {"dims":[..],"matrix":[[[re,im],..],..]} or {"dims":[..],"diag":[..]}
DensityMatrix state_from_json(const nlohmann::json& j, const Tolerances& tol = {});
nlohmann::json state_to_json(const DensityMatrix& rho);
DensityMatrix load_state(const std::string& path, const Tolerances& tol = {});

// {"groups":[{"modes":[..],"rows":[[..],..]},..]}
nlohmann::json array_to_json(const MulticorrelanceArray& arr);

// value rounded to 12 significant digits
double sig12(double x);

}  // namespace corrkit
